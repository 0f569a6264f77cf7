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

#include <algorithm>

#include "reference_sha256.hpp"
#include "ssibridge/enclave/run.hpp"
#include "ssibridge/error.hpp"
#include "ssibridge/federation/mock.hpp"

using namespace ssibridge;
using namespace ssibridge::enclave;

namespace {

constexpr uint64_t kEpoch = 1700000000;

VerificationPolicy test_policy() {
  VerificationPolicy p;
  p.required_mark_types = {"federation-membership"};
  p.max_chain_depth = 8;
  p.max_clock_skew_s = 60;
  return p;
}

struct EnclaveFixture {
  fed::FederationTopology topology = fed::FederationTopology::default_demo();
  fed::MockFederation federation{topology, 7, kEpoch};
  fed::InProcessTransport transport{federation};
  ManualClock clock{kEpoch + 100};
  Platform platform = new_platform(1234);
  WorkloadDescriptor workload = default_verification_workload(test_policy());

  SdJwtVc credential() {
    Rng salt_rng(50);
    return issue_sd_jwt_vc(federation.entity_signing_key("qeaa-provider"),
                           "qeaa-provider", "did:example:holder",
                           json{{"kind", "health"}},
                           json{{"given_name", "Ada"}}, "vct:test",
                           30ll * 24 * 3600, clock, salt_rng);
  }

  AttestedRun run(const SdJwtVc& cred) {
    return run_attested_verification(platform, workload, cred,
                                     federation.anchor_public_key(),
                                     federation.pinned_cert_fingerprints(),
                                     transport, clock);
  }
};

}  // namespace

TEST_SUITE("workload measurement") {
  TEST_CASE("same descriptor measures identically; version bump changes it") {
    WorkloadDescriptor a = default_verification_workload(test_policy(), "1.0");
    WorkloadDescriptor b = default_verification_workload(test_policy(), "1.0");
    WorkloadDescriptor c = default_verification_workload(test_policy(), "1.1");
    CHECK(measure_workload(a) == measure_workload(b));
    CHECK(measure_workload(a) != measure_workload(c));
  }

  TEST_CASE("measurement matches independent recomputation of canonical bytes") {
    WorkloadDescriptor w = default_verification_workload(test_policy());
    CHECK(measure_workload(w).hex() == oracle::sha256_hex(w.canonical_bytes()));
  }

  TEST_CASE("policy changes the measurement") {
    VerificationPolicy other = test_policy();
    other.max_chain_depth = 4;
    CHECK(measure_workload(default_verification_workload(test_policy())) !=
          measure_workload(default_verification_workload(other)));
  }

  TEST_CASE("descriptor round-trips through json") {
    WorkloadDescriptor w = default_verification_workload(test_policy());
    WorkloadDescriptor back = WorkloadDescriptor::from_json(w.to_json());
    CHECK(measure_workload(back) == measure_workload(w));
  }
}

TEST_SUITE("platform") {
  TEST_CASE("endorsement chain verifies root -> platform -> attestation key") {
    Platform p = new_platform(5);
    CHECK(p.chain_valid());
    CHECK(p.root_cert().verify_signed_by(p.root_cert().subject_key));
    CHECK(p.platform_cert().verify_signed_by(p.root_cert().subject_key));
    Bytes sig = p.attestation_sign(to_bytes("probe"));
    CHECK(verify_bytes(p.platform_cert().subject_key, to_bytes("probe"), sig));
  }

  TEST_CASE("different seeds give different roots; same seed reproduces") {
    CHECK(new_platform(1).root_fingerprint() != new_platform(2).root_fingerprint());
    CHECK(new_platform(9).root_fingerprint() == new_platform(9).root_fingerprint());
  }

  TEST_CASE("serialization carries no private key material") {
    Platform p = new_platform(6);
    std::string serialized = p.to_json().dump();
    json j = json::parse(serialized);
    CHECK(j.size() == 2);
    CHECK(j.contains("root_cert"));
    CHECK(j.contains("platform_cert"));
    CHECK(serialized.find("priv") == std::string::npos);
  }
}

TEST_SUITE("public inputs encoding") {
  TEST_CASE("encoding is the documented length-prefixed layout, bit-exact") {
    PublicInputs in;
    in.credential_digest = sha256(std::string_view("cred"));
    in.anchor_key_fingerprint = sha256(std::string_view("anchor"));
    in.endpoint_cert_fingerprints = {sha256(std::string_view("b")),
                                     sha256(std::string_view("a"))};
    in.measurement = sha256(std::string_view("meas"));
    in.policy_digest = sha256(std::string_view("pol"));
    in.verified_at = 0x0102030405060708ull;
    in.outcome = 1;

    auto fp_a = sha256(std::string_view("a")).bytes;
    auto fp_b = sha256(std::string_view("b")).bytes;
    std::vector<std::array<uint8_t, 32>> sorted_fps{fp_a, fp_b};
    std::sort(sorted_fps.begin(), sorted_fps.end());

    Bytes expected;
    auto put32 = [&](uint32_t v) {
      expected.push_back(v >> 24);
      expected.push_back((v >> 16) & 0xff);
      expected.push_back((v >> 8) & 0xff);
      expected.push_back(v & 0xff);
    };
    auto put_field = [&](BytesView b) {
      put32(static_cast<uint32_t>(b.size()));
      expected.insert(expected.end(), b.begin(), b.end());
    };
    put_field(in.credential_digest.bytes);
    put_field(in.anchor_key_fingerprint.bytes);
    Bytes fp_list{0, 0, 0, 2};
    fp_list.insert(fp_list.end(), sorted_fps[0].begin(), sorted_fps[0].end());
    fp_list.insert(fp_list.end(), sorted_fps[1].begin(), sorted_fps[1].end());
    put_field(fp_list);
    put_field(in.measurement.bytes);
    put_field(in.policy_digest.bytes);
    Bytes ts{1, 2, 3, 4, 5, 6, 7, 8};
    put_field(ts);
    Bytes outcome{1};
    put_field(outcome);

    CHECK(in.encode() == expected);
    CHECK(in.digest().hex() ==
          oracle::sha256_hex(std::string(expected.begin(), expected.end())));
  }

  TEST_CASE("fingerprint order does not matter, content does") {
    PublicInputs a, b;
    a.endpoint_cert_fingerprints = {sha256(std::string_view("x")),
                                    sha256(std::string_view("y"))};
    b.endpoint_cert_fingerprints = {sha256(std::string_view("y")),
                                    sha256(std::string_view("x"))};
    CHECK(a.encode() == b.encode());
    b.endpoint_cert_fingerprints.push_back(sha256(std::string_view("z")));
    CHECK(a.encode() != b.encode());
  }

  TEST_CASE("json round trip") {
    PublicInputs in;
    in.credential_digest = sha256(std::string_view("c"));
    in.verified_at = 77;
    in.outcome = 1;
    CHECK(PublicInputs::from_json(in.to_json()) == in);
  }
}

TEST_SUITE("quote") {
  TEST_CASE("made quote verifies; wrong expectations yield distinct verdicts") {
    Platform p = new_platform(7);
    Platform other = new_platform(8);
    PublicInputs in;
    in.credential_digest = sha256(std::string_view("cred"));
    in.measurement = sha256(std::string_view("m"));
    in.verified_at = kEpoch;
    in.outcome = 1;
    Quote q = make_quote(p, in.measurement, in, kEpoch);

    CHECK(verify_quote(q, p.root_cert(), in.measurement, in) ==
          QuoteVerdict::Valid);
    CHECK(verify_quote(q, other.root_cert(), in.measurement, in) ==
          QuoteVerdict::RootMismatch);
    CHECK(verify_quote(q, p.root_cert(), sha256(std::string_view("other")), in) ==
          QuoteVerdict::MeasurementMismatch);
    PublicInputs wrong = in;
    wrong.outcome = 0;
    CHECK(verify_quote(q, p.root_cert(), in.measurement, wrong) ==
          QuoteVerdict::InputsMismatch);

    Quote forged = q;
    forged.signature[0] ^= 1;
    CHECK(verify_quote(forged, p.root_cert(), in.measurement, in) ==
          QuoteVerdict::BadSignature);
  }

  TEST_CASE("report_data is input digest plus 32 zero bytes") {
    Platform p = new_platform(7);
    PublicInputs in;
    in.outcome = 1;
    Quote q = make_quote(p, in.measurement, in, kEpoch);
    Digest d = in.digest();
    CHECK(std::equal(d.bytes.begin(), d.bytes.end(), q.report_data.begin()));
    for (size_t i = 32; i < 64; ++i) CHECK(q.report_data[i] == 0);
  }

  TEST_CASE("serialization carries the simulated marker and round-trips") {
    Platform p = new_platform(7);
    PublicInputs in;
    Quote q = make_quote(p, in.measurement, in, kEpoch);
    json j = q.to_json();
    CHECK(j.at("simulated") == true);
    Quote back = Quote::from_json(j);
    CHECK(back.signature == q.signature);
    CHECK(back.bound_inputs == q.bound_inputs);

    json unmarked = j;
    unmarked.erase("simulated");
    CHECK_THROWS_AS(Quote::from_json(unmarked), Error);
  }
}

TEST_SUITE("attested run") {
  TEST_CASE("healthy federation, valid credential: outcome 1, quote verifies") {
    EnclaveFixture fx;
    SdJwtVc cred = fx.credential();
    AttestedRun run = fx.run(cred);

    CHECK(run.quote.bound_inputs.outcome == 1);
    CHECK(run.transcript.chain_verdict.valid);
    CHECK(run.transcript.credential_result == "ok");
    CHECK(run.quote.measurement == measure_workload(fx.workload));
    CHECK(run.quote.bound_inputs.credential_digest ==
          credential_digest(cred.compact_form()));
    CHECK(verify_quote(run.quote, fx.platform.root_cert(),
                       measure_workload(fx.workload),
                       run.quote.bound_inputs) == QuoteVerdict::Valid);
    // 7 observations: 3 EC fetches + 2 subordinate fetches + 2 status checks.
    CHECK(run.transcript.endpoint_observations.size() == 7);
    CHECK(run.transcript.started_at <= run.transcript.finished_at);
  }

  TEST_CASE("revoked mark: outcome 0, quote still produced and verifiable") {
    EnclaveFixture fx;
    SdJwtVc cred = fx.credential();
    fx.federation.revoke_mark("mark:qeaa-provider:federation-membership");
    AttestedRun run = fx.run(cred);
    CHECK(run.quote.bound_inputs.outcome == 0);
    CHECK_FALSE(run.transcript.chain_verdict.valid);
    CHECK(run.transcript.chain_verdict.reason == fed::ChainReason::MarkRevoked);
    CHECK(verify_quote(run.quote, fx.platform.root_cert(),
                       measure_workload(fx.workload),
                       run.quote.bound_inputs) == QuoteVerdict::Valid);
  }

  TEST_CASE("negative-result quotes verify exactly like positive ones") {
    EnclaveFixture fx;
    SdJwtVc cred = fx.credential();
    AttestedRun good = fx.run(cred);
    fx.federation.revoke_mark("mark:qeaa-provider:federation-membership");
    AttestedRun bad = fx.run(cred);
    for (const AttestedRun* run : {&good, &bad}) {
      CHECK(verify_quote(run->quote, fx.platform.root_cert(),
                         measure_workload(fx.workload),
                         run->quote.bound_inputs) == QuoteVerdict::Valid);
    }
    CHECK(good.quote.bound_inputs.outcome == 1);
    CHECK(bad.quote.bound_inputs.outcome == 0);
  }

  TEST_CASE("swapped endpoint cert aborts with TransportCompromised") {
    EnclaveFixture fx;
    SdJwtVc cred = fx.credential();
    fx.federation.swap_endpoint_certs("qeaa-provider", "wallet-provider");
    try {
      fx.run(cred);
      FAIL("expected TransportCompromised");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::TransportCompromised);
    }
  }

  TEST_CASE("expired credential: outcome 0 with the error named in transcript") {
    EnclaveFixture fx;
    Rng salt_rng(51);
    ManualClock issue_clock(kEpoch);
    SdJwtVc brief = issue_sd_jwt_vc(
        fx.federation.entity_signing_key("qeaa-provider"), "qeaa-provider",
        "did:example:holder", json::object(), json::object(), "vct:brief", 30,
        issue_clock, salt_rng);
    AttestedRun run = fx.run(brief);  // fixture clock is kEpoch+100, past exp+skew
    CHECK(run.quote.bound_inputs.outcome == 0);
    CHECK(run.transcript.credential_result == "Expired");
  }

  TEST_CASE("unknown issuer: resolution failure is attested as outcome 0") {
    EnclaveFixture fx;
    Rng rng(52), salt_rng(53);
    Jwk ghost_key = generate_key("ghost#0", rng);
    SdJwtVc foreign = issue_sd_jwt_vc(ghost_key, "ghost-issuer", "sub",
                                      json::object(), json::object(), "vct",
                                      3600, fx.clock, salt_rng);
    AttestedRun run = fx.run(foreign);
    CHECK(run.quote.bound_inputs.outcome == 0);
    CHECK(run.transcript.chain_verdict.reason ==
          fed::ChainReason::ResolutionFailed);
  }

  TEST_CASE("no ambient authority: all reads flow through parameters") {
    EnclaveFixture fx;
    SdJwtVc cred = fx.credential();

    struct CountingClock : Clock {
      mutable uint64_t calls = 0;
      uint64_t base;
      explicit CountingClock(uint64_t b) : base(b) {}
      uint64_t now() const override {
        ++calls;
        return base;
      }
    } counting_clock(kEpoch + 123);

    fed::CountingTransport counting(fx.transport);
    AttestedRun run = run_attested_verification(
        fx.platform, fx.workload, cred, fx.federation.anchor_public_key(),
        fx.federation.pinned_cert_fingerprints(), counting, counting_clock);

    CHECK(counting_clock.calls > 0);
    CHECK(counting.total_calls() ==
          run.transcript.endpoint_observations.size());
    // Every timestamp equals the injected clock's value: nothing read wall
    // time behind the interface.
    CHECK(run.transcript.started_at == kEpoch + 123);
    CHECK(run.transcript.finished_at == kEpoch + 123);
    CHECK(run.quote.timestamp == kEpoch + 123);
    CHECK(run.quote.bound_inputs.verified_at == kEpoch + 123);
    for (const auto& o : run.transcript.endpoint_observations)
      CHECK(o.observed_at == kEpoch + 123);
  }

  TEST_CASE("binding: each public-input field flip makes verify_quote fail") {
    EnclaveFixture fx;
    SdJwtVc cred = fx.credential();
    AttestedRun run = fx.run(cred);
    const PublicInputs& bound = run.quote.bound_inputs;
    const Digest expected_measurement = measure_workload(fx.workload);

    auto expect_mismatch = [&](PublicInputs mutated) {
      QuoteVerdict v = verify_quote(run.quote, fx.platform.root_cert(),
                                    expected_measurement, mutated);
      CHECK(v != QuoteVerdict::Valid);
    };

    PublicInputs m = bound;
    m.credential_digest.bytes[0] ^= 1;
    expect_mismatch(m);

    m = bound;
    m.anchor_key_fingerprint.bytes[0] ^= 1;
    expect_mismatch(m);

    m = bound;
    m.endpoint_cert_fingerprints.push_back(sha256(std::string_view("extra")));
    expect_mismatch(m);

    m = bound;
    m.measurement.bytes[0] ^= 1;
    expect_mismatch(m);

    m = bound;
    m.policy_digest.bytes[0] ^= 1;
    expect_mismatch(m);

    m = bound;
    m.verified_at += 1;
    expect_mismatch(m);

    m = bound;
    m.outcome ^= 1;
    expect_mismatch(m);

    CHECK(verify_quote(run.quote, fx.platform.root_cert(),
                       expected_measurement, bound) == QuoteVerdict::Valid);
  }

  TEST_CASE("transcript round-trips through json with a stable digest") {
    EnclaveFixture fx;
    AttestedRun run = fx.run(fx.credential());
    json j = run.transcript.to_json();
    VerificationTranscript back = VerificationTranscript::from_json(j);
    CHECK(back.digest() == run.transcript.digest());
    CHECK(back.endpoint_observations.size() ==
          run.transcript.endpoint_observations.size());
  }
}
