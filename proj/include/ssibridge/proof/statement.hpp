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

#include "ssibridge/digest.hpp"
#include "ssibridge/jwk.hpp"

namespace ssibridge::proof {

// The public statement committed on-ledger: "a verification workload with
// this measurement, on a platform rooted at this vendor certificate, checked
// this credential under this policy at this time, with this outcome."
//
// Canonical encoding mirrors the public-inputs style: each field, in the
// order below, is emitted as a 4-byte big-endian length followed by its
// bytes (digests raw 32 bytes, verified_at 8-byte big-endian, outcome 1
// byte).
struct ProofStatement {
  Digest root_of_trust_fingerprint;
  Digest credential_digest;
  Digest measurement;
  Digest policy_digest;
  uint64_t verified_at = 0;
  uint8_t outcome = 0;

  Bytes encode() const;
  json to_json() const;
  static ProofStatement from_json(const json& j);

  bool operator==(const ProofStatement&) const = default;
};

Digest statement_digest(const ProofStatement& s);

}  // namespace ssibridge::proof
