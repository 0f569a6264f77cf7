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

#include "ssibridge/clock.hpp"
#include "ssibridge/federation/transport.hpp"

namespace ssibridge::fed {

inline constexpr int kMaxChainDepth = 8;

// Walks authority_hints from the leaf's entity configuration up to the first
// entity with no hints, collecting [leaf EC, subordinate statements...,
// anchor EC]. Resolution does not verify anything; that is
// verify_trust_chain's job. Throws FetchFailed / CycleDetected /
// DepthExceeded.
TrustChain resolve_trust_chain(const std::string& leaf_id,
                               FederationTransport& fetcher,
                               int max_depth = kMaxChainDepth);

// One status query, outcome mapped per the transport contract: connection
// failure -> Unreachable, empty or unparseable body -> Silent, {"active":
// true/false} -> Active/Revoked. Never throws.
StatusResult check_trust_mark_status(const TrustMark& mark,
                                     FederationTransport& transport,
                                     const Clock& clock);

// Full chain verification: linkage, anchor pinning, signatures, statement
// validity windows, trust-mark authorization/signature/status. Every mark of
// every chain entity is queried exactly once. Failures are encoded in the
// verdict, never thrown.
ChainVerdict verify_trust_chain(const TrustChain& chain, const Jwk& anchor_key,
                                FederationTransport& transport,
                                const Clock& clock);

}  // namespace ssibridge::fed
