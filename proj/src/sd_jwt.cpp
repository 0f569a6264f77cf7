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

#include "ssibridge/sd_jwt.hpp"

#include <algorithm>

#include "ssibridge/error.hpp"

namespace ssibridge {

std::string Disclosure::serialize() const {
  json arr = json::array({b64url_encode(salt), claim_name, claim_value});
  return b64url_encode(to_bytes(arr.dump()));
}

Disclosure Disclosure::parse(std::string_view b64) {
  json arr;
  try {
    arr = json::parse(to_string(b64url_decode(b64)));
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedEncoding, e.what());
  }
  if (!arr.is_array() || arr.size() != 3 || !arr[0].is_string() ||
      !arr[1].is_string())
    throw Error(Errc::MalformedEncoding, "disclosure must be [salt, name, value]");
  Bytes salt_raw = b64url_decode(arr[0].get<std::string>());
  if (salt_raw.size() != 16)
    throw Error(Errc::MalformedEncoding, "disclosure salt must be 16 bytes");
  Disclosure d;
  std::copy(salt_raw.begin(), salt_raw.end(), d.salt.begin());
  d.claim_name = arr[1].get<std::string>();
  d.claim_value = arr[2];
  return d;
}

Disclosure make_disclosure(const Salt& salt, const std::string& name,
                           const json& value) {
  if (name.empty()) throw Error(Errc::InvalidClaimName, "empty claim name");
  return Disclosure{salt, name, value};
}

Digest disclosure_digest(const Disclosure& d) {
  return sha256(d.serialize());
}

std::string SdJwtVc::compact_form() const {
  std::string out = issuer_jwt.compact() + "~";
  for (const auto& d : disclosures) out += d.serialize() + "~";
  return out;
}

SdJwtVc SdJwtVc::parse(std::string_view compact) {
  if (compact.empty() || compact.back() != '~')
    throw Error(Errc::MalformedToken, "compact SD-JWT must end with '~'");
  size_t first = compact.find('~');
  SdJwtVc out;
  out.issuer_jwt = SignedToken::parse(compact.substr(0, first));
  size_t pos = first + 1;
  while (pos < compact.size()) {
    size_t next = compact.find('~', pos);
    if (next == std::string_view::npos)
      throw Error(Errc::MalformedToken, "unterminated disclosure segment");
    out.disclosures.push_back(Disclosure::parse(compact.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

std::vector<std::string> SdJwtVc::disclosable_names() const {
  std::vector<std::string> names;
  names.reserve(disclosures.size());
  for (const auto& d : disclosures) names.push_back(d.claim_name);
  return names;
}

SdJwtVc issue_sd_jwt_vc(const Jwk& issuer_key, const std::string& issuer_id,
                        const std::string& subject_id,
                        const json& always_visible, const json& disclosable,
                        const std::string& vct, int64_t lifetime_s,
                        const Clock& clock, Rng& rng) {
  if (lifetime_s <= 0)
    throw Error(Errc::InvalidLifetime, "lifetime_s must be positive");
  if (!issuer_key.has_private())
    throw Error(Errc::SigningKeyUnavailable, issuer_key.key_id);

  std::vector<Disclosure> disclosures;
  std::vector<std::string> sd;
  for (auto it = disclosable.begin(); it != disclosable.end(); ++it) {
    Salt salt{};
    Bytes raw = rng.bytes(16);
    std::copy(raw.begin(), raw.end(), salt.begin());
    Disclosure d = make_disclosure(salt, it.key(), it.value());
    sd.push_back(disclosure_digest(d).hex());
    disclosures.push_back(std::move(d));
  }
  std::sort(sd.begin(), sd.end());

  uint64_t iat = clock.now();
  json payload;
  for (auto it = always_visible.begin(); it != always_visible.end(); ++it)
    payload[it.key()] = it.value();
  payload["iss"] = issuer_id;
  payload["sub"] = subject_id;
  payload["vct"] = vct;
  payload["iat"] = iat;
  payload["exp"] = iat + static_cast<uint64_t>(lifetime_s);
  payload["_sd"] = sd;
  payload["_sd_alg"] = "sha-256";

  SdJwtVc cred;
  cred.issuer_jwt = SignedToken::sign(issuer_key, payload, "vc+sd-jwt");
  cred.disclosures = std::move(disclosures);
  return cred;
}

SdJwtVc present(const SdJwtVc& cred, const std::set<std::string>& selected) {
  SdJwtVc out;
  out.issuer_jwt = cred.issuer_jwt;
  std::set<std::string> seen;
  for (const auto& d : cred.disclosures) {
    if (selected.count(d.claim_name)) {
      out.disclosures.push_back(d);
      seen.insert(d.claim_name);
    }
  }
  for (const auto& name : selected)
    if (!seen.count(name)) throw Error(Errc::UnknownDisclosure, name);
  return out;
}

VerifiedClaims verify_sd_jwt_vc(const SdJwtVc& cred,
                                const std::vector<Jwk>& issuer_keys,
                                const Clock& clock, int64_t max_clock_skew_s) {
  bool sig_ok = false;
  const std::string kid = cred.issuer_jwt.kid();
  for (const auto& key : issuer_keys) {
    if (!kid.empty() && key.key_id != kid) continue;
    if (cred.issuer_jwt.verify(key)) {
      sig_ok = true;
      break;
    }
  }
  if (!sig_ok) {
    // kid may be absent or rotated; fall back to trying every key.
    for (const auto& key : issuer_keys) {
      if (cred.issuer_jwt.verify(key)) {
        sig_ok = true;
        break;
      }
    }
  }
  if (!sig_ok)
    throw Error(Errc::SignatureInvalid, "issuer signature does not verify");

  const json& payload = cred.issuer_jwt.payload();
  uint64_t now = clock.now();
  uint64_t iat = payload.value("iat", uint64_t{0});
  uint64_t exp = payload.value("exp", uint64_t{0});
  uint64_t skew = max_clock_skew_s > 0 ? static_cast<uint64_t>(max_clock_skew_s) : 0;
  if (now + skew < iat) throw Error(Errc::NotYetValid, "iat is in the future");
  if (now >= exp + skew) throw Error(Errc::Expired, "credential expired");

  std::set<std::string> sd;
  if (payload.contains("_sd"))
    for (const auto& h : payload.at("_sd")) sd.insert(h.get<std::string>());

  VerifiedClaims out;
  out.claims = json::object();
  for (auto it = payload.begin(); it != payload.end(); ++it) {
    if (it.key() == "_sd" || it.key() == "_sd_alg") continue;
    out.claims[it.key()] = it.value();
  }
  for (const auto& d : cred.disclosures) {
    std::string digest_hex = disclosure_digest(d).hex();
    if (!sd.count(digest_hex))
      throw Error(Errc::UnknownDisclosureDigest,
                  "disclosure '" + d.claim_name + "' not committed in _sd");
    out.claims[d.claim_name] = d.claim_value;
    out.disclosed_names.push_back(d.claim_name);
  }
  return out;
}

Digest credential_digest(std::string_view compact_form) {
  return sha256(compact_form);
}

}  // namespace ssibridge
