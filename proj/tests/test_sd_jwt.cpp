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

#include <set>

#include "reference_sha256.hpp"
#include "ssibridge/error.hpp"
#include "ssibridge/sd_jwt.hpp"

using namespace ssibridge;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::IoError;
}

struct Fixture {
  Rng key_rng{100};
  Jwk issuer = generate_key("qeaa#0", key_rng);
  ManualClock clock{1700000000};
  Rng salt_rng{200};

  SdJwtVc issue(const json& visible = json{{"credential_kind", "health"}},
                const json& disclosable = json{{"given_name", "Ada"},
                                               {"family_name", "Lovelace"},
                                               {"date_of_birth", "1815-12-10"}}) {
    return issue_sd_jwt_vc(issuer, "qeaa-provider", "did:example:holder",
                           visible, disclosable, "vct:test", 3600, clock,
                           salt_rng);
  }
};

}  // namespace

TEST_SUITE("disclosure") {
  TEST_CASE("zero-salt disclosure round-trips to the same triple") {
    Salt salt{};  // 16 zero bytes
    Disclosure d = make_disclosure(salt, "given_name", "Ada");
    Disclosure back = Disclosure::parse(d.serialize());
    CHECK(back == d);
  }

  TEST_CASE("serialization is deterministic") {
    Salt salt{};
    salt[3] = 9;
    Disclosure a = make_disclosure(salt, "n", json{{"deep", true}});
    Disclosure b = make_disclosure(salt, "n", json{{"deep", true}});
    CHECK(a.serialize() == b.serialize());
  }

  TEST_CASE("different salts give different digests") {
    // Oracle check first: recompute both digests over the serialized bytes
    // with the reference hash.
    Salt s1{}, s2{};
    s2[0] = 1;
    Disclosure d1 = make_disclosure(s1, "given_name", "Ada");
    Disclosure d2 = make_disclosure(s2, "given_name", "Ada");
    CHECK(oracle::sha256_hex(d1.serialize()) != oracle::sha256_hex(d2.serialize()));
    CHECK(disclosure_digest(d1).hex() == oracle::sha256_hex(d1.serialize()));
    CHECK(disclosure_digest(d2).hex() == oracle::sha256_hex(d2.serialize()));
    CHECK(disclosure_digest(d1) != disclosure_digest(d2));
  }

  TEST_CASE("100 random salt pairs never collide") {
    Rng rng(77);
    for (int i = 0; i < 100; ++i) {
      Salt s1, s2;
      Bytes b1 = rng.bytes(16), b2 = rng.bytes(16);
      std::copy(b1.begin(), b1.end(), s1.begin());
      std::copy(b2.begin(), b2.end(), s2.begin());
      if (s1 == s2) continue;
      CHECK(disclosure_digest(make_disclosure(s1, "claim", i)) !=
            disclosure_digest(make_disclosure(s2, "claim", i)));
    }
  }

  TEST_CASE("empty claim name is rejected") {
    Salt salt{};
    CHECK(code_of([&] { make_disclosure(salt, "", 1); }) ==
          Errc::InvalidClaimName);
  }

  TEST_CASE("digest is always 32 bytes") {
    Salt salt{};
    CHECK(disclosure_digest(make_disclosure(salt, "a", 1)).bytes.size() == 32);
  }
}

TEST_SUITE("sd-jwt issuance") {
  TEST_CASE("zero disclosable claims: empty _sd, compact ends with one tilde") {
    Fixture fx;
    SdJwtVc cred = fx.issue(json{{"k", "v"}}, json::object());
    CHECK(cred.disclosures.empty());
    CHECK(cred.issuer_jwt.payload().at("_sd").empty());
    std::string compact = cred.compact_form();
    CHECK(compact.back() == '~');
    CHECK(compact.find('~') == compact.size() - 1);
  }

  TEST_CASE("three disclosable claims: digests all present, recomputed by oracle") {
    Fixture fx;
    SdJwtVc cred = fx.issue();
    CHECK(cred.disclosures.size() == 3);
    std::set<std::string> sd;
    for (const auto& h : cred.issuer_jwt.payload().at("_sd"))
      sd.insert(h.get<std::string>());
    CHECK(sd.size() == 3);
    for (const auto& d : cred.disclosures)
      CHECK(sd.count(oracle::sha256_hex(d.serialize())) == 1);
  }

  TEST_CASE("_sd is sorted ascending") {
    Fixture fx;
    SdJwtVc cred = fx.issue();
    auto sd = cred.issuer_jwt.payload().at("_sd");
    for (size_t i = 1; i < sd.size(); ++i)
      CHECK(sd[i - 1].get<std::string>() < sd[i].get<std::string>());
  }

  TEST_CASE("iat/exp come from the clock and lifetime") {
    Fixture fx;
    SdJwtVc cred = fx.issue();
    CHECK(cred.issuer_jwt.payload().at("iat") == 1700000000);
    CHECK(cred.issuer_jwt.payload().at("exp") == 1700003600);
    CHECK(cred.issuer_jwt.payload().at("_sd_alg") == "sha-256");
  }

  TEST_CASE("zero lifetime is a precondition violation") {
    Fixture fx;
    CHECK(code_of([&] {
            issue_sd_jwt_vc(fx.issuer, "i", "s", json::object(),
                            json::object(), "vct", 0, fx.clock, fx.salt_rng);
          }) == Errc::InvalidLifetime);
  }

  TEST_CASE("issuing without private key fails") {
    Fixture fx;
    Jwk pub = fx.issuer.public_only();
    CHECK(code_of([&] {
            issue_sd_jwt_vc(pub, "i", "s", json::object(), json::object(),
                            "vct", 10, fx.clock, fx.salt_rng);
          }) == Errc::SigningKeyUnavailable);
  }
}

TEST_SUITE("sd-jwt presentation") {
  TEST_CASE("selecting all names is the identity") {
    Fixture fx;
    SdJwtVc cred = fx.issue();
    auto names = cred.disclosable_names();
    SdJwtVc all = present(cred, {names.begin(), names.end()});
    CHECK(all.compact_form() == cred.compact_form());
  }

  TEST_CASE("empty selection keeps zero disclosures, jwt still verifies") {
    Fixture fx;
    SdJwtVc cred = fx.issue();
    SdJwtVc none = present(cred, {});
    CHECK(none.disclosures.empty());
    CHECK(none.issuer_jwt.compact() == cred.issuer_jwt.compact());
    CHECK(none.issuer_jwt.verify(fx.issuer.public_only()));
  }

  TEST_CASE("single selection keeps exactly that disclosure") {
    Fixture fx;
    SdJwtVc cred = fx.issue();
    SdJwtVc one = present(cred, {"given_name"});
    REQUIRE(one.disclosures.size() == 1);
    CHECK(one.disclosures[0].claim_name == "given_name");
  }

  TEST_CASE("unknown selection name is rejected") {
    Fixture fx;
    SdJwtVc cred = fx.issue();
    CHECK(code_of([&] { present(cred, {"no_such_claim"}); }) ==
          Errc::UnknownDisclosure);
  }
}

TEST_SUITE("sd-jwt verification") {
  TEST_CASE("fresh credential verifies and merges claims") {
    Fixture fx;
    SdJwtVc cred = fx.issue();
    VerifiedClaims claims =
        verify_sd_jwt_vc(cred, {fx.issuer.public_only()}, fx.clock);
    CHECK(claims.claims.at("given_name") == "Ada");
    CHECK(claims.claims.at("credential_kind") == "health");
    CHECK(claims.claims.at("iss") == "qeaa-provider");
    CHECK(claims.disclosed_names.size() == 3);
  }

  TEST_CASE("expiry and not-yet-valid are distinct") {
    Fixture fx;
    SdJwtVc cred = fx.issue();
    ManualClock late(1700003600);
    CHECK(code_of([&] {
            verify_sd_jwt_vc(cred, {fx.issuer.public_only()}, late);
          }) == Errc::Expired);
    ManualClock early(1699999999);
    CHECK(code_of([&] {
            verify_sd_jwt_vc(cred, {fx.issuer.public_only()}, early);
          }) == Errc::NotYetValid);
  }

  TEST_CASE("clock skew loosens both bounds") {
    Fixture fx;
    SdJwtVc cred = fx.issue();
    ManualClock late(1700003600);
    CHECK_NOTHROW(verify_sd_jwt_vc(cred, {fx.issuer.public_only()}, late, 5));
    ManualClock early(1699999999);
    CHECK_NOTHROW(verify_sd_jwt_vc(cred, {fx.issuer.public_only()}, early, 5));
  }

  TEST_CASE("wrong issuer key set fails with SignatureInvalid") {
    Fixture fx;
    SdJwtVc cred = fx.issue();
    Rng rng(55);
    Jwk stranger = generate_key("stranger", rng);
    CHECK(code_of([&] {
            verify_sd_jwt_vc(cred, {stranger.public_only()}, fx.clock);
          }) == Errc::SignatureInvalid);
  }

  TEST_CASE("foreign disclosure is caught by digest check") {
    Fixture fx;
    SdJwtVc cred = fx.issue();
    Salt foreign{};
    foreign[15] = 0xee;
    cred.disclosures.push_back(make_disclosure(foreign, "given_name", "Eve"));
    CHECK(code_of([&] {
            verify_sd_jwt_vc(cred, {fx.issuer.public_only()}, fx.clock);
          }) == Errc::UnknownDisclosureDigest);
  }

  TEST_CASE("property: verify succeeds on every subset of disclosures") {
    Fixture fx;
    SdJwtVc cred = fx.issue();
    auto names = cred.disclosable_names();
    for (unsigned mask = 0; mask < (1u << names.size()); ++mask) {
      std::set<std::string> selected;
      for (size_t i = 0; i < names.size(); ++i)
        if (mask & (1u << i)) selected.insert(names[i]);
      SdJwtVc subset = present(cred, selected);
      VerifiedClaims claims =
          verify_sd_jwt_vc(subset, {fx.issuer.public_only()}, fx.clock);
      CHECK(claims.disclosed_names.size() == selected.size());
    }
  }

  TEST_CASE("property: 1000 random credentials round-trip through parse") {
    Rng key_rng(300);
    Jwk issuer = generate_key("i", key_rng);
    ManualClock clock(1700000000);
    Rng rng(301);
    for (int i = 0; i < 1000; ++i) {
      json disclosable;
      int n = static_cast<int>(rng.next_u64() % 4);
      for (int k = 0; k < n; ++k)
        disclosable["claim_" + std::to_string(k)] =
            b64url_encode(rng.bytes(1 + rng.next_u64() % 24));
      json visible{{"idx", i}};
      SdJwtVc cred =
          issue_sd_jwt_vc(issuer, "iss", "sub", visible, disclosable,
                          "vct:" + std::to_string(i), 1000, clock, rng);
      SdJwtVc parsed = SdJwtVc::parse(cred.compact_form());
      CHECK(parsed.compact_form() == cred.compact_form());
      CHECK(parsed == cred);
    }
  }

  TEST_CASE("property: single-bit mutations of payload or signature are rejected") {
    Fixture fx;
    SdJwtVc cred = fx.issue();
    const std::string jwt = cred.issuer_jwt.compact();
    size_t header_end = jwt.find('.');
    Rng rng(400);
    int rejected = 0, trials = 0;
    for (int i = 0; i < 300; ++i) {
      // Mutate one bit somewhere in payload or signature segments.
      size_t pos = header_end + 1 + rng.next_u64() % (jwt.size() - header_end - 1);
      if (jwt[pos] == '.') continue;
      std::string mutated = jwt;
      int bit = rng.next_u64() % 7;  // stay inside ASCII
      mutated[pos] = static_cast<char>(mutated[pos] ^ (1 << bit));
      if (mutated[pos] == '.' || mutated[pos] == '~') continue;
      ++trials;
      try {
        SdJwtVc hacked = cred;
        hacked.issuer_jwt = SignedToken::parse(mutated);
        verify_sd_jwt_vc(hacked, {fx.issuer.public_only()}, fx.clock);
        // Verification passing means the mutation produced the same token.
        CHECK(mutated == jwt);
      } catch (const Error&) {
        ++rejected;
      }
    }
    CHECK(trials > 200);
    CHECK(rejected == trials);
  }
}

TEST_SUITE("credential digest") {
  TEST_CASE("hash over exact bytes, one-byte sensitivity, oracle agreement") {
    Fixture fx;
    SdJwtVc cred = fx.issue();
    std::string compact = cred.compact_form();
    CHECK(credential_digest(compact) == credential_digest(compact));
    CHECK(credential_digest(compact).hex() == oracle::sha256_hex(compact));
    CHECK(credential_digest(compact + "x") != credential_digest(compact));
  }

  TEST_CASE("fixed vector agrees with the oracle") {
    const std::string vector = "eyJh.eyJi.c2ln~ZGlzY2xvc3VyZQ~";
    CHECK(credential_digest(vector).hex() == oracle::sha256_hex(vector));
  }

  TEST_CASE("injective over 10k distinct credentials") {
    std::set<std::string> digests;
    Rng rng(500);
    ManualClock clock(1700000000);
    Jwk issuer = generate_key("i", rng);
    for (int i = 0; i < 10000; ++i) {
      // Cheap distinct corpus: same issuance, distinct visible claim.
      json visible{{"serial", i}};
      SdJwtVc cred = issue_sd_jwt_vc(issuer, "iss", "sub", visible,
                                     json::object(), "vct", 1000, clock, rng);
      digests.insert(credential_digest(cred.compact_form()).hex());
    }
    CHECK(digests.size() == 10000);
  }
}
