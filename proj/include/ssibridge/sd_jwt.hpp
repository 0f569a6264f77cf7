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

#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ssibridge/clock.hpp"
#include "ssibridge/signed_token.hpp"

namespace ssibridge {

using Salt = std::array<uint8_t, 16>;

// One selectively disclosable claim. Serialized form is base64url (no
// padding) of the canonical JSON array [salt_b64, name, value]; the digest
// placed in the credential's _sd list is SHA-256 over that serialization's
// ASCII bytes.
struct Disclosure {
  Salt salt{};
  std::string claim_name;
  json claim_value;

  std::string serialize() const;
  static Disclosure parse(std::string_view b64);

  bool operator==(const Disclosure& other) const {
    return salt == other.salt && claim_name == other.claim_name &&
           claim_value == other.claim_value;
  }
};

Disclosure make_disclosure(const Salt& salt, const std::string& name,
                           const json& value);
Digest disclosure_digest(const Disclosure& d);

// Compact form: "<jwt>~<d1>~...~<dn>~". Zero disclosures serialize as
// "<jwt>~". Parsing preserves byte-exactness: serialize(parse(s)) == s.
struct SdJwtVc {
  SignedToken issuer_jwt;
  std::vector<Disclosure> disclosures;

  std::string compact_form() const;
  static SdJwtVc parse(std::string_view compact);

  std::vector<std::string> disclosable_names() const;

  bool operator==(const SdJwtVc& other) const {
    return compact_form() == other.compact_form();
  }
};

struct VerifiedClaims {
  json claims;                                // always-visible + disclosed
  std::vector<std::string> disclosed_names;
};

// Issues an SD-JWT-VC. Claims in `disclosable` move behind salted digests in
// _sd (sorted ascending by hex digest); `always_visible` claims stay in the
// payload. iss/sub/vct/iat/exp are set here; salts come from `rng`.
SdJwtVc issue_sd_jwt_vc(const Jwk& issuer_key, const std::string& issuer_id,
                        const std::string& subject_id,
                        const json& always_visible, const json& disclosable,
                        const std::string& vct, int64_t lifetime_s,
                        const Clock& clock, Rng& rng);

// Keeps only the selected disclosures; issuer_jwt is untouched byte-for-byte.
SdJwtVc present(const SdJwtVc& cred, const std::set<std::string>& selected);

// Full check: signature under one of issuer_keys, iat <= now < exp, every
// carried disclosure digest present in _sd. Throws SignatureInvalid /
// Expired / NotYetValid / UnknownDisclosureDigest. max_clock_skew_s loosens
// both time bounds for policy-driven callers.
VerifiedClaims verify_sd_jwt_vc(const SdJwtVc& cred,
                                const std::vector<Jwk>& issuer_keys,
                                const Clock& clock,
                                int64_t max_clock_skew_s = 0);

// SHA-256 over the exact compact-form bytes as transmitted.
Digest credential_digest(std::string_view compact_form);

}  // namespace ssibridge
