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

#include "ssibridge/attested.hpp"

#include "ssibridge/error.hpp"

namespace ssibridge {

Digest AttestedCredential::original_credential_digest() const {
  return Digest::from_hex(
      claims().at("original_credential_digest").get<std::string>());
}

Digest AttestedCredential::issuer_token_digest() const {
  return Digest::from_hex(
      claims().at("issuer_token_digest").get<std::string>());
}

uint64_t AttestedCredential::verified_at() const {
  return claims().at("verified_at").get<uint64_t>();
}

int64_t AttestedCredential::validity_window_s() const {
  return claims().at("validity_window_s").get<int64_t>();
}

enclave::Quote AttestedCredential::quote() const {
  return enclave::Quote::from_json(claims().at("quote"));
}

std::vector<Digest> AttestedCredential::endpoint_cert_fingerprints() const {
  std::vector<Digest> out;
  for (const auto& fp : claims().at("endpoint_cert_fingerprints"))
    out.push_back(Digest::from_hex(fp.get<std::string>()));
  return out;
}

Digest AttestedCredential::anchor_key_fingerprint() const {
  return Digest::from_hex(
      claims().at("anchor_key_fingerprint").get<std::string>());
}

uint8_t AttestedCredential::outcome() const {
  return claims().at("outcome").get<uint8_t>();
}

AttestedCredential AttestedCredential::parse(std::string_view compact) {
  AttestedCredential a;
  a.jwt_vc = SignedToken::parse(compact);
  return a;
}

AttestedCredential issue_attested_jwt_vc(const Jwk& wallet_key,
                                         const std::string& wallet_id,
                                         const SdJwtVc& source,
                                         const enclave::Quote& quote,
                                         const fed::ChainVerdict& verdict,
                                         int64_t window_s, const Clock& clock) {
  if (!verdict.valid)
    throw Error(Errc::NonValidVerdict,
                std::string(fed::chain_reason_name(verdict.reason)));

  Digest source_digest = credential_digest(source.compact_form());
  // Re-check the quote side: internally consistent binding, a self-valid
  // endorsement chain, and report_data committed to this exact credential.
  if (!quote.report_data_matches(quote.bound_inputs))
    throw Error(Errc::QuoteMismatch, "report_data does not bind the carried inputs");
  if (quote.bound_inputs.credential_digest != source_digest)
    throw Error(Errc::QuoteMismatch, "quote is bound to a different credential digest");
  if (!quote.root_cert.verify_signed_by(quote.root_cert.subject_key) ||
      !quote.platform_cert.verify_signed_by(quote.root_cert.subject_key) ||
      !verify_bytes(quote.platform_cert.subject_key, quote.signed_bytes(),
                    quote.signature))
    throw Error(Errc::QuoteMismatch, "quote endorsement chain does not verify");
  // The quote's outcome bit may be 0: the enclave also attests negative
  // results, and the minted credential carries that bit verbatim.

  json fps = json::array();
  for (const auto& fp : quote.bound_inputs.endpoint_cert_fingerprints)
    fps.push_back(fp.hex());

  json payload{
      {"iss", wallet_id},
      {"original_credential_digest", source_digest.hex()},
      {"issuer_token_digest", sha256(source.issuer_jwt.compact()).hex()},
      {"verification_result", verdict.summary()},
      {"verified_at", quote.bound_inputs.verified_at},
      {"validity_window_s", window_s},
      {"quote", quote.to_json()},
      {"endpoint_cert_fingerprints", fps},
      {"anchor_key_fingerprint", quote.bound_inputs.anchor_key_fingerprint.hex()},
      {"outcome", quote.bound_inputs.outcome},
      {"iat", clock.now()},
  };
  AttestedCredential out;
  out.jwt_vc = SignedToken::sign(wallet_key, payload, "vc+jwt",
                                 json{{"jwk", wallet_key.to_json(false)}});
  return out;
}

}  // namespace ssibridge
