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

#include "ssibridge/enclave/platform.hpp"
#include "ssibridge/enclave/public_inputs.hpp"

namespace ssibridge::enclave {

// Simulated attestation quote. report_data follows the SGX convention of 64
// bytes with the upper half zeroed: the lower 32 bytes are the SHA-256 of
// the bound public-inputs encoding. The full endorsement chain travels with
// the quote (as PCK chains do); trust in the root is always established
// against an out-of-band reference, never from the embedded copy.
//
// bound_inputs is a convenience copy of the committed values; any tampering
// with it is caught because report_data must equal its hash. Every quote
// carries `simulated: true`; there is no code path that emits one without it.
struct Quote {
  Digest measurement;
  std::array<uint8_t, 64> report_data{};
  uint64_t timestamp = 0;
  Bytes signature;  // attestation key over (measurement || report_data || timestamp)
  Cert platform_cert;
  Cert root_cert;
  PublicInputs bound_inputs;

  Bytes signed_bytes() const;
  json to_json() const;
  static Quote from_json(const json& j);

  // report_data consistency with the carried bound_inputs copy.
  bool report_data_matches(const PublicInputs& inputs) const;
};

Quote make_quote(const Platform& platform, const Digest& measurement,
                 const PublicInputs& inputs, uint64_t timestamp);

enum class QuoteVerdict {
  Valid,
  RootMismatch,
  BadSignature,
  MeasurementMismatch,
  InputsMismatch,
};
std::string_view quote_verdict_name(QuoteVerdict v);

// Checks, in order: the embedded chain roots at trusted_root (by
// fingerprint), chain and quote signatures verify, measurement matches,
// report_data binds exactly the expected public inputs.
QuoteVerdict verify_quote(const Quote& q, const Cert& trusted_root,
                          const Digest& expected_measurement,
                          const PublicInputs& expected_inputs);

}  // namespace ssibridge::enclave
