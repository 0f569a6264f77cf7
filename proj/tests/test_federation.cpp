// Copyright 2026 The ssibridge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doctest.h"

#include <atomic>
#include <functional>
#include <thread>

#include "ssibridge/error.hpp"
#include "ssibridge/federation/http.hpp"
#include "ssibridge/federation/verify.hpp"

using namespace ssibridge;
using namespace ssibridge::fed;

namespace {

constexpr uint64_t kEpoch = 1700000000;

struct FedFixture {
  FederationTopology topology;
  MockFederation federation;
  InProcessTransport transport;
  ManualClock clock{kEpoch + 100};

  explicit FedFixture(FederationTopology topo = FederationTopology::default_demo(),
                      uint64_t seed = 7)
      : topology(std::move(topo)), federation(topology, seed, kEpoch),
        transport(federation) {}

  TrustChain chain(const std::string& leaf = "qeaa-provider") {
    return resolve_trust_chain(leaf, transport);
  }
  ChainVerdict verify(const TrustChain& c) {
    return verify_trust_chain(c, federation.anchor_public_key(), transport,
                              clock);
  }
};

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::IoError;
}

}  // namespace

TEST_SUITE("entity statements") {
  TEST_CASE("anchor self-statement verifies under its own key") {
    Rng rng(1);
    Jwk key = generate_key("anchor#0", rng);
    EntityStatementFields f;
    f.issuer_id = f.subject_id = "anchor";
    f.jwks = {key.public_only()};
    f.iat = kEpoch;
    f.exp = kEpoch + 1000;
    EntityStatement ec = build_entity_statement(key, f);
    CHECK(ec.is_entity_configuration());
    CHECK(ec.token.verify(key.public_only()));
    EntityStatement parsed = parse_entity_statement(ec.compact());
    CHECK(parsed.fields.issuer_id == "anchor");
    CHECK(parsed.fields.jwks.size() == 1);
  }

  TEST_CASE("subordinate statement signed by the anchor") {
    Rng rng(2);
    Jwk anchor_key = generate_key("anchor#0", rng);
    Jwk leaf_key = generate_key("leaf#0", rng);
    EntityStatementFields f;
    f.issuer_id = "anchor";
    f.subject_id = "leaf";
    f.jwks = {leaf_key.public_only()};
    f.iat = kEpoch;
    f.exp = kEpoch + 1000;
    EntityStatement ss = build_entity_statement(anchor_key, f);
    CHECK_FALSE(ss.is_entity_configuration());
    CHECK(ss.token.verify(anchor_key.public_only()));
    CHECK_FALSE(ss.token.verify(leaf_key.public_only()));
  }

  TEST_CASE("signing without private key fails") {
    Rng rng(3);
    Jwk pub = generate_key("k", rng).public_only();
    EntityStatementFields f;
    f.issuer_id = f.subject_id = "x";
    CHECK(code_of([&] { build_entity_statement(pub, f); }) ==
          Errc::SigningKeyUnavailable);
  }

  TEST_CASE("expired statement is rejected downstream") {
    FedFixture fx;
    fx.federation.set_statement_expired("qeaa-provider", true);
    TrustChain chain = fx.chain();
    ChainVerdict verdict = fx.verify(chain);
    CHECK_FALSE(verdict.valid);
    CHECK(verdict.reason == ChainReason::StatementExpired);
  }
}

TEST_SUITE("topology") {
  TEST_CASE("config file round trip") {
    FederationTopology topo = FederationTopology::default_demo();
    FederationTopology back = FederationTopology::from_json(topo.to_json());
    CHECK(back.entities.size() == topo.entities.size());
    CHECK(back.anchor_id() == "anchor");
    CHECK(back.find("qeaa-provider")->authority == "intermediate");
  }

  TEST_CASE("zero or multiple anchors is invalid") {
    FederationTopology none;
    none.entities = {{"a", "provider", "b", {}}};
    CHECK(code_of([&] { MockFederation fed(none, 1, kEpoch); }) ==
          Errc::InvalidTopology);

    FederationTopology two;
    two.entities = {{"a", "anchor", "", {}}, {"b", "anchor", "", {}}};
    CHECK(code_of([&] { MockFederation fed(two, 1, kEpoch); }) ==
          Errc::InvalidTopology);
  }

  TEST_CASE("unknown authority is invalid") {
    FederationTopology topo;
    topo.entities = {{"a", "anchor", "", {}}, {"p", "provider", "ghost", {}}};
    CHECK(code_of([&] { MockFederation fed(topo, 1, kEpoch); }) ==
          Errc::InvalidTopology);
  }
}

TEST_SUITE("chain resolution") {
  TEST_CASE("minimal topology: leaf -> anchor is 3 statements") {
    FedFixture fx(FederationTopology::minimal());
    TrustChain chain = fx.chain();
    REQUIRE(chain.statements.size() == 3);
    CHECK(chain.leaf().fields.subject_id == "qeaa-provider");
    CHECK(chain.statements[1].fields.issuer_id == "anchor");
    CHECK(chain.statements[1].fields.subject_id == "qeaa-provider");
    CHECK(chain.anchor().fields.subject_id == "anchor");
    CHECK(chain.anchor().is_entity_configuration());
  }

  TEST_CASE("default topology: leaf -> intermediate -> anchor is 4 statements") {
    FedFixture fx;
    TrustChain chain = fx.chain();
    REQUIRE(chain.statements.size() == 4);
    auto ids = chain.entity_ids();
    CHECK(ids == std::vector<std::string>{"qeaa-provider", "intermediate",
                                          "anchor"});
  }

  TEST_CASE("resolution is deterministic for a fixed topology") {
    FedFixture fx;
    TrustChain a = fx.chain();
    TrustChain b = fx.chain();
    REQUIRE(a.statements.size() == b.statements.size());
    for (size_t i = 0; i < a.statements.size(); ++i)
      CHECK(a.statements[i].compact() == b.statements[i].compact());
  }

  TEST_CASE("cycle detection") {
    FederationTopology topo;
    topo.entities = {{"anchor", "anchor", "", {}},
                     {"a", "intermediate", "b", {}},
                     {"b", "intermediate", "a", {}}};
    MockFederation fed(topo, 1, kEpoch);
    InProcessTransport transport(fed);
    CHECK(code_of([&] { resolve_trust_chain("a", transport); }) ==
          Errc::CycleDetected);
  }

  TEST_CASE("depth cap") {
    FederationTopology topo;
    topo.entities.push_back({"anchor", "anchor", "", {}});
    std::string parent = "anchor";
    for (int i = 0; i < 10; ++i) {
      std::string id = "mid" + std::to_string(i);
      topo.entities.push_back({id, "intermediate", parent, {}});
      parent = id;
    }
    MockFederation fed(topo, 1, kEpoch);
    InProcessTransport transport(fed);
    CHECK(code_of([&] { resolve_trust_chain(parent, transport); }) ==
          Errc::DepthExceeded);
  }

  TEST_CASE("fetch failure carries the entity id") {
    FedFixture fx;
    fx.federation.inject_outage("intermediate");
    try {
      fx.chain();
      FAIL("expected FetchFailed");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::FetchFailed);
      CHECK(std::string(e.what()).find("intermediate") != std::string::npos);
    }
  }
}

TEST_SUITE("trust mark status") {
  TEST_CASE("active mark returns Active with the raw unsigned JSON") {
    FedFixture fx;
    TrustChain chain = fx.chain();
    const TrustMark& mark = chain.leaf().fields.trust_marks.at(0);
    StatusResult result = check_trust_mark_status(mark, fx.transport, fx.clock);
    CHECK(result.status == MarkStatus::Active);
    REQUIRE(result.raw_response.has_value());
    // The wire format is plain unsigned JSON, not a signed token.
    CHECK(*result.raw_response == json{{"active", true}}.dump());
    CHECK(result.raw_response->find('.') == std::string::npos);
    CHECK_FALSE(result.endpoint_cert_fingerprint.is_zero());
    CHECK(result.queried_at == fx.clock.now());
  }

  TEST_CASE("revoked, silent and unreachable map distinctly") {
    FedFixture fx;
    TrustChain chain = fx.chain();
    const TrustMark& mark = chain.leaf().fields.trust_marks.at(0);

    fx.federation.revoke_mark(mark.mark_id);
    StatusResult revoked = check_trust_mark_status(mark, fx.transport, fx.clock);
    CHECK(revoked.status == MarkStatus::Revoked);
    CHECK(revoked.raw_response.has_value());

    fx.federation.set_mark_silent(mark.mark_id);
    StatusResult silent = check_trust_mark_status(mark, fx.transport, fx.clock);
    CHECK(silent.status == MarkStatus::Silent);
    CHECK_FALSE(silent.raw_response.has_value());

    fx.federation.inject_outage(mark.owner_id);
    StatusResult gone = check_trust_mark_status(mark, fx.transport, fx.clock);
    CHECK(gone.status == MarkStatus::Unreachable);
    CHECK_FALSE(gone.raw_response.has_value());
    CHECK(gone.endpoint_cert_fingerprint.is_zero());
  }
}

TEST_SUITE("chain verification") {
  TEST_CASE("healthy chain is Valid with every mark Active") {
    FedFixture fx;
    ChainVerdict verdict = fx.verify(fx.chain());
    CHECK(verdict.valid);
    CHECK(verdict.reason == ChainReason::None);
    int marks_seen = 0;
    for (const auto& e : verdict.per_entity)
      for (const auto& m : e.marks) {
        CHECK(m.status.status == MarkStatus::Active);
        CHECK(m.authorized);
        CHECK(m.signature_ok);
        ++marks_seen;
      }
    CHECK(marks_seen == 2);  // qeaa-provider + intermediate
  }

  TEST_CASE("every mark of every chain entity is queried exactly once") {
    FedFixture fx;
    TrustChain chain = fx.chain();
    CountingTransport counting(fx.transport);
    verify_trust_chain(chain, fx.federation.anchor_public_key(), counting,
                       fx.clock);
    CHECK(counting.status_calls() == 2);
    CHECK(counting.fetch_calls() == 0);  // verification never re-fetches
  }

  TEST_CASE("revoked mark -> Invalid(MarkRevoked) naming the offender") {
    FedFixture fx;
    TrustChain chain = fx.chain();
    fx.federation.revoke_mark("mark:qeaa-provider:federation-membership");
    ChainVerdict verdict = fx.verify(chain);
    CHECK_FALSE(verdict.valid);
    CHECK(verdict.reason == ChainReason::MarkRevoked);
    CHECK(verdict.offending_entity == "qeaa-provider");
  }

  TEST_CASE("unreachable endpoint -> Invalid(MarkUnreachable)") {
    FedFixture fx;
    TrustChain chain = fx.chain();
    fx.federation.inject_outage("qeaa-provider");
    ChainVerdict verdict = fx.verify(chain);
    CHECK_FALSE(verdict.valid);
    CHECK(verdict.reason == ChainReason::MarkUnreachable);
  }

  TEST_CASE("anchor pinning: any other key makes every chain AnchorMismatch") {
    FedFixture fx;
    TrustChain chain = fx.chain();
    Rng rng(99);
    for (int i = 0; i < 5; ++i) {
      Jwk wrong = generate_key("imposter" + std::to_string(i), rng);
      ChainVerdict verdict = verify_trust_chain(chain, wrong.public_only(),
                                                fx.transport, fx.clock);
      CHECK_FALSE(verdict.valid);
      CHECK(verdict.reason == ChainReason::AnchorMismatch);
    }
  }

  TEST_CASE("rotate then verify the old chain: signature failure") {
    FedFixture fx;
    TrustChain old_chain = fx.chain();
    ChainVerdict before = fx.verify(old_chain);
    CHECK(before.valid);

    fx.federation.rotate_key("qeaa-provider");
    // A stale leaf EC in an otherwise fresh chain no longer verifies: the
    // subordinate statement now attests the rotated key.
    TrustChain fresh = fx.chain();
    TrustChain mixed = fresh;
    mixed.statements[0] = old_chain.statements[0];
    ChainVerdict after = fx.verify(mixed);
    CHECK_FALSE(after.valid);
    CHECK(after.reason == ChainReason::BadSignature);

    // Anchor rotation invalidates even a freshly resolved chain while the
    // verifier still pins the old anchor key.
    Jwk old_anchor = fx.federation.anchor_public_key();
    fx.federation.rotate_key("anchor");
    TrustChain newest = fx.chain();
    ChainVerdict pinned_old = verify_trust_chain(newest, old_anchor,
                                                 fx.transport, fx.clock);
    CHECK_FALSE(pinned_old.valid);
    CHECK(pinned_old.reason == ChainReason::AnchorMismatch);
  }

  TEST_CASE("verdict soundness: single fault anywhere -> exactly that reason") {
    // Exhaustive over fault type x applicable entity position on a 6-entity
    // topology with a 4-hop chain.
    FederationTopology topo;
    topo.entities = {{"anchor", "anchor", "", {}},
                     {"i1", "intermediate", "anchor", {"federation-membership"}},
                     {"i2", "intermediate", "i1", {"federation-membership"}},
                     {"leaf", "provider", "i2", {"federation-membership"}},
                     {"p2", "provider", "i1", {"federation-membership"}},
                     {"p3", "provider", "anchor", {"federation-membership"}}};

    const std::vector<std::string> chain_entities{"leaf", "i2", "i1", "anchor"};
    const std::vector<std::string> mark_owners{"leaf", "i2", "i1"};

    struct FaultCase {
      std::string fault;
      std::vector<std::string> positions;
      ChainReason expected;
    };
    const std::vector<FaultCase> faults = {
        {"expired", chain_entities, ChainReason::StatementExpired},
        {"tamper", chain_entities, ChainReason::BadSignature},
        {"revoke", mark_owners, ChainReason::MarkRevoked},
        {"silent", mark_owners, ChainReason::MarkSilent},
        {"outage", mark_owners, ChainReason::MarkUnreachable},
    };

    for (const auto& fc : faults) {
      for (const auto& entity : fc.positions) {
        CAPTURE(fc.fault);
        CAPTURE(entity);
        MockFederation fed(topo, 11, kEpoch);
        InProcessTransport transport(fed);
        ManualClock clock(kEpoch + 50);
        TrustChain chain = resolve_trust_chain("leaf", transport);

        if (fc.fault == "expired") fed.set_statement_expired(entity, true);
        else if (fc.fault == "tamper") fed.tamper_signature(entity, true);
        else if (fc.fault == "revoke")
          fed.revoke_mark("mark:" + entity + ":federation-membership");
        else if (fc.fault == "silent")
          fed.set_mark_silent("mark:" + entity + ":federation-membership");
        else if (fc.fault == "outage") fed.inject_outage(entity);

        // Statement faults live in the statements themselves and need a
        // re-resolve; mark faults are observed at status-check time.
        if (fc.fault == "expired" || fc.fault == "tamper")
          chain = resolve_trust_chain("leaf", transport);

        ChainVerdict verdict = verify_trust_chain(
            chain, fed.anchor_public_key(), transport, clock);
        CHECK_FALSE(verdict.valid);
        CHECK(chain_reason_name(verdict.reason) ==
              chain_reason_name(fc.expected));
      }
    }

    // Zero faults -> Valid.
    MockFederation fed(topo, 11, kEpoch);
    InProcessTransport transport(fed);
    ManualClock clock(kEpoch + 50);
    TrustChain chain = resolve_trust_chain("leaf", transport);
    CHECK(verify_trust_chain(chain, fed.anchor_public_key(), transport, clock)
              .valid);
  }

  TEST_CASE("unauthorized mark issuer is flagged") {
    FedFixture fx;
    TrustChain chain = fx.chain();
    // Forge: rebuild the leaf EC with a mark of a type the anchor never
    // authorized, signed by the leaf itself.
    Jwk leaf_key = fx.federation.entity_signing_key("qeaa-provider");
    TrustMark rogue = TrustMark::build(leaf_key, "mark:rogue", "self-audit",
                                       "qeaa-provider", "qeaa-provider",
                                       "fed:qeaa-provider/status");
    EntityStatementFields f = chain.leaf().fields;
    f.trust_marks.push_back(rogue);
    chain.statements[0] = build_entity_statement(leaf_key, f);
    ChainVerdict verdict = fx.verify(chain);
    CHECK_FALSE(verdict.valid);
    CHECK(verdict.reason == ChainReason::MarkUnauthorized);
  }
}

TEST_SUITE("federation over http") {
  TEST_CASE("http transport serves the same chain as in-process") {
    FedFixture fx;
    HttpFederationServer server(fx.federation);
    HttpFederationTransport http(server.base_url());

    TrustChain via_http = resolve_trust_chain("qeaa-provider", http);
    TrustChain direct = fx.chain();
    REQUIRE(via_http.statements.size() == direct.statements.size());
    for (size_t i = 0; i < direct.statements.size(); ++i)
      CHECK(via_http.statements[i].compact() == direct.statements[i].compact());

    ChainVerdict verdict = verify_trust_chain(
        via_http, fx.federation.anchor_public_key(), http, fx.clock);
    CHECK(verdict.valid);

    SUBCASE("status endpoint speaks the documented JSON shape") {
      const TrustMark& mark = via_http.leaf().fields.trust_marks.at(0);
      TransportReply reply =
          http.query_mark_status(mark.status_endpoint, mark.mark_id);
      CHECK(reply.status == TransportStatus::Ok);
      CHECK(json::parse(reply.body) == json{{"active", true}});
      REQUIRE(reply.cert.has_value());
      CHECK(reply.cert->entity_id == "qeaa-provider");
    }

    SUBCASE("outage over http maps to Unreachable") {
      fx.federation.inject_outage("qeaa-provider");
      TransportReply reply = http.fetch_entity_configuration("qeaa-provider");
      CHECK(reply.status == TransportStatus::Unreachable);
    }

    SUBCASE("admin surface drives fault injection remotely") {
      admin_command(server.base_url(), "revoke",
                    json{{"mark", "mark:qeaa-provider:federation-membership"}});
      ChainVerdict after = verify_trust_chain(
          via_http, fx.federation.anchor_public_key(), http, fx.clock);
      CHECK_FALSE(after.valid);
      CHECK(after.reason == ChainReason::MarkRevoked);

      RemoteFederationInfo info = fetch_federation_info(server.base_url());
      CHECK(info.anchor_id == "anchor");
      CHECK(info.pinned_cert_fingerprints.size() == 4);
      CHECK(info.anchor_public_key.public_material ==
            fx.federation.anchor_public_key().public_material);
    }

    server.stop();
  }

  TEST_CASE("unknown entity over http is NotFound, not Unreachable") {
    FedFixture fx;
    HttpFederationServer server(fx.federation);
    HttpFederationTransport http(server.base_url());
    TransportReply reply = http.fetch_entity_configuration("nobody");
    CHECK(reply.status == TransportStatus::NotFound);
    server.stop();
  }

  TEST_CASE("concurrent readers with a mutating federation stay consistent") {
    FedFixture fx;
    std::atomic<bool> reader_done{false};
    std::thread mutator([&] {
      while (!reader_done) {
        fx.federation.revoke_mark("mark:qeaa-provider:federation-membership");
        fx.federation.reinstate_mark("mark:qeaa-provider:federation-membership");
      }
    });
    int verified = 0, failed = 0, torn = 0;
    for (int i = 0; i < 30; ++i) {
      TrustChain chain = resolve_trust_chain("qeaa-provider", fx.transport);
      ChainVerdict verdict = verify_trust_chain(
          chain, fx.federation.anchor_public_key(), fx.transport, fx.clock);
      if (verdict.valid) ++verified;
      else if (verdict.reason == ChainReason::MarkRevoked) ++failed;
      else ++torn;  // anything else would be a torn state
    }
    reader_done = true;
    mutator.join();
    CHECK(torn == 0);
    CHECK(verified + failed == 30);
  }
}
