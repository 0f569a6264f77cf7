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

#include <vector>

#include "ssibridge/digest.hpp"
#include "ssibridge/jwk.hpp"

namespace ssibridge::enclave {

// The values a quote publicly commits to. The canonical encoding is
// bit-exact and documented in the README: for each field, in the order
// below, emit a 4-byte big-endian length followed by the field bytes.
//
//   1. credential_digest          32 bytes
//   2. anchor_key_fingerprint     32 bytes
//   3. endpoint cert fingerprints 4-byte big-endian count, then each
//                                 32-byte fingerprint, sorted ascending
//   4. measurement                32 bytes
//   5. policy_digest              32 bytes
//   6. verified_at                8 bytes big-endian
//   7. outcome                    1 byte (0 or 1)
struct PublicInputs {
  Digest credential_digest;
  Digest anchor_key_fingerprint;
  std::vector<Digest> endpoint_cert_fingerprints;  // kept sorted ascending
  Digest measurement;
  Digest policy_digest;
  uint64_t verified_at = 0;
  uint8_t outcome = 0;

  Bytes encode() const;
  Digest digest() const;  // SHA-256 of encode()

  json to_json() const;
  static PublicInputs from_json(const json& j);

  bool operator==(const PublicInputs&) const = default;
};

}  // namespace ssibridge::enclave
