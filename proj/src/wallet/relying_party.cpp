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

#include "ssibridge/wallet/relying_party.hpp"

#include <algorithm>

#include "ssibridge/error.hpp"
#include "ssibridge/proof/transcript_backend.hpp"

namespace ssibridge::wallet {

std::string_view rp_reason_name(RpReason r) {
  switch (r) {
    case RpReason::Accept: return "Accept";
    case RpReason::WalletSignatureInvalid: return "WalletSignatureInvalid";
    case RpReason::RootUntrusted: return "RootUntrusted";
    case RpReason::QuoteInvalid: return "QuoteInvalid";
    case RpReason::OutcomeNegative: return "OutcomeNegative";
    case RpReason::ClaimBindingMismatch: return "ClaimBindingMismatch";
    case RpReason::EventMissing: return "EventMissing";
    case RpReason::EventMismatch: return "EventMismatch";
    case RpReason::Stale: return "Stale";
    case RpReason::NotYetVerified: return "NotYetVerified";
    case RpReason::DisclosureInvalid: return "DisclosureInvalid";
    case RpReason::OffchainOnlyForbidden: return "OffchainOnlyForbidden";
  }
  return "?";
}

json RpVerdict::to_json() const {
  return json{{"accepted", accepted},
              {"reason", std::string(rp_reason_name(reason))},
              {"detail", detail},
              {"disclosed_claims", disclosed_claims}};
}

namespace {

RpVerdict reject(RpReason reason, std::string detail) {
  RpVerdict v;
  v.accepted = false;
  v.reason = reason;
  v.detail = std::move(detail);
  return v;
}

}  // namespace

RpVerdict relying_party_verify(const PresentationPackage& pkg,
                               const ledger::Chain& chain,
                               const std::vector<Digest>& trusted_roots,
                               const Digest& expected_measurement,
                               const Clock& clock, const RpOptions& options) {
  const AttestedCredential& attested = pkg.attested;

  // 1. Wallet signature, under the key the token itself carries. This is an
  // integrity seal over the claim set; trust comes from the quote and the
  // ledger event below.
  json header = attested.jwt_vc.header();
  if (!header.contains("jwk"))
    return reject(RpReason::WalletSignatureInvalid, "no wallet key in header");
  Jwk wallet_key;
  enclave::Quote quote;
  try {
    wallet_key = Jwk::from_json(header.at("jwk"));
    if (!attested.jwt_vc.verify(wallet_key))
      return reject(RpReason::WalletSignatureInvalid, "signature check failed");
    quote = attested.quote();
  } catch (const Error& e) {
    return reject(RpReason::WalletSignatureInvalid, e.what());
  } catch (const json::exception& e) {
    return reject(RpReason::WalletSignatureInvalid, e.what());
  }

  // 2. Quote: trusted root, expected measurement, intact binding.
  Digest root_fp = quote.root_cert.fingerprint();
  if (std::find(trusted_roots.begin(), trusted_roots.end(), root_fp) ==
      trusted_roots.end())
    return reject(RpReason::RootUntrusted, root_fp.hex());
  enclave::QuoteVerdict qv = enclave::verify_quote(
      quote, quote.root_cert, expected_measurement, quote.bound_inputs);
  if (qv != enclave::QuoteVerdict::Valid)
    return reject(RpReason::QuoteInvalid,
                  std::string(enclave::quote_verdict_name(qv)));

  // 3. Quote-bound values must agree with the wallet-signed claims; the
  // quote wins any dispute, so a claim edit cannot survive this gate.
  try {
    if (quote.bound_inputs.credential_digest !=
            attested.original_credential_digest() ||
        quote.bound_inputs.anchor_key_fingerprint !=
            attested.anchor_key_fingerprint() ||
        quote.bound_inputs.verified_at != attested.verified_at() ||
        quote.bound_inputs.outcome != attested.outcome())
      return reject(RpReason::ClaimBindingMismatch,
                    "claims disagree with quote-bound inputs");
    std::vector<Digest> claimed_fps = attested.endpoint_cert_fingerprints();
    std::sort(claimed_fps.begin(), claimed_fps.end());
    if (claimed_fps != quote.bound_inputs.endpoint_cert_fingerprints)
      return reject(RpReason::ClaimBindingMismatch,
                    "endpoint fingerprints disagree with quote");
  } catch (const json::exception& e) {
    return reject(RpReason::ClaimBindingMismatch, e.what());
  }
  if (quote.bound_inputs.outcome != 1)
    return reject(RpReason::OutcomeNegative, "attested outcome is 0");

  // 4. On-ledger confirmation. The statement digest recomputed here must be
  // the one the contract verified and logged.
  std::optional<ledger::LedgerEvent> event =
      ledger::resolve_event(chain, pkg.event_ref);
  if (!event) {
    if (!options.allow_offchain_only)
      return reject(RpReason::EventMissing, "event reference does not resolve");
  } else {
    proof::ProofStatement expected_stmt = proof::statement_from_quote(quote);
    if (event->credential_digest != attested.original_credential_digest() ||
        event->statement_digest != proof::statement_digest(expected_stmt) ||
        event->outcome != 1)
      return reject(RpReason::EventMismatch,
                    "ledger event does not match this credential");
  }

  // 5. Validity window [t1, t1 + window), half-open.
  uint64_t now = clock.now();
  uint64_t t1 = attested.verified_at();
  int64_t window = attested.validity_window_s();
  if (now < t1) return reject(RpReason::NotYetVerified, "verified_at in the future");
  if (window <= 0 || now >= t1 + static_cast<uint64_t>(window))
    return reject(RpReason::Stale, "validity window elapsed");

  // 6. Disclosed subset consistency with the issuer-signed token: every
  // carried disclosure hashes into _sd, and the issuer-token portion of the
  // package is the one the attested credential names. No federation key is
  // involved; the issuer signature itself was checked inside the enclave.
  if (sha256(pkg.original.issuer_jwt.compact()) !=
      attested.issuer_token_digest())
    return reject(RpReason::DisclosureInvalid,
                  "issuer token is not the attested one");
  std::set<std::string> sd;
  const json& payload = pkg.original.issuer_jwt.payload();
  if (payload.contains("_sd"))
    for (const auto& h : payload.at("_sd")) sd.insert(h.get<std::string>());
  json disclosed = json::object();
  for (const auto& d : pkg.original.disclosures) {
    if (!sd.count(disclosure_digest(d).hex()))
      return reject(RpReason::DisclosureInvalid,
                    "disclosure '" + d.claim_name + "' not committed in _sd");
    disclosed[d.claim_name] = d.claim_value;
  }
  for (auto it = payload.begin(); it != payload.end(); ++it) {
    if (it.key() == "_sd" || it.key() == "_sd_alg") continue;
    disclosed[it.key()] = it.value();
  }

  RpVerdict verdict;
  verdict.accepted = true;
  verdict.reason = RpReason::Accept;
  verdict.disclosed_claims = std::move(disclosed);
  return verdict;
}

}  // namespace ssibridge::wallet
