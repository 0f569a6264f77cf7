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

#include "ssibridge/enclave/quote.hpp"
#include "ssibridge/federation/types.hpp"
#include "ssibridge/sd_jwt.hpp"

namespace ssibridge {

// The credential minted after an attested verification: a compact JWT-VC
// signed by the wallet, whose claims vouch that the source SD-JWT-VC (by
// digest) was verified inside the simulated enclave. The wallet's public key
// travels in the token header; trust never derives from that key alone but
// from the embedded quote and the on-ledger proof event.
struct AttestedCredential {
  SignedToken jwt_vc;

  const json& claims() const { return jwt_vc.payload(); }
  Digest original_credential_digest() const;
  Digest issuer_token_digest() const;
  uint64_t verified_at() const;
  int64_t validity_window_s() const;
  enclave::Quote quote() const;
  std::vector<Digest> endpoint_cert_fingerprints() const;
  Digest anchor_key_fingerprint() const;
  uint8_t outcome() const;

  static AttestedCredential parse(std::string_view compact);
};

// Mints the attested JWT-VC. Requires a Valid chain verdict (the caller's
// preflight verdict) and a quote that is internally consistent and bound to
// the source credential's digest; both are the caller's duty and re-checked
// here. The quote's outcome bit is carried verbatim and may be 0 — the
// enclave's word wins over the preflight. window_s is the holder-proposed
// validity window (assumption: a credential verified at t1 stays acceptable
// until t1 + window).
AttestedCredential issue_attested_jwt_vc(const Jwk& wallet_key,
                                         const std::string& wallet_id,
                                         const SdJwtVc& source,
                                         const enclave::Quote& quote,
                                         const fed::ChainVerdict& verdict,
                                         int64_t window_s, const Clock& clock);

}  // namespace ssibridge
