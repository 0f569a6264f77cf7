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

#include "ssibridge/wallet/ssi_wallet.hpp"

namespace ssibridge::wallet {

enum class RpReason {
  Accept,
  WalletSignatureInvalid,
  RootUntrusted,
  QuoteInvalid,
  OutcomeNegative,
  ClaimBindingMismatch,
  EventMissing,
  EventMismatch,
  Stale,
  NotYetVerified,
  DisclosureInvalid,
  OffchainOnlyForbidden,
};
std::string_view rp_reason_name(RpReason r);

struct RpVerdict {
  bool accepted = false;
  RpReason reason = RpReason::Accept;
  std::string detail;
  json disclosed_claims;  // populated on Accept

  json to_json() const;
};

struct RpOptions {
  // When set, a package whose event reference cannot be resolved is still
  // acceptable on the strength of the quote alone. Off by default: the
  // on-chain event is part of the standard acceptance path.
  bool allow_offchain_only = false;
};

// The verifier-side check. Works entirely from the package, the chain copy
// and the pinned expectations; no federation endpoint is contacted — by
// construction, this function has no way to reach one.
//
// Accept requires: wallet signature valid under the key the token carries;
// quote valid (embedded root fingerprint among trusted_roots, measurement as
// expected, report_data binding intact); quote-bound claims consistent with
// the attested credential's claims; outcome bit 1; the event reference
// resolving to a ProofVerified event whose credential and statement digests
// match; clock within [verified_at, verified_at + window); and the disclosed
// subset hashing into the issuer token's _sd set.
RpVerdict relying_party_verify(const PresentationPackage& pkg,
                               const ledger::Chain& chain,
                               const std::vector<Digest>& trusted_roots,
                               const Digest& expected_measurement,
                               const Clock& clock, const RpOptions& options = {});

}  // namespace ssibridge::wallet
