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

#include <map>

#include "ssibridge/clock.hpp"
#include "ssibridge/enclave/quote.hpp"
#include "ssibridge/enclave/workload.hpp"
#include "ssibridge/federation/verify.hpp"
#include "ssibridge/sd_jwt.hpp"

namespace ssibridge::enclave {

struct EndpointObservation {
  std::string endpoint;  // logical locator that was contacted
  Digest cert_fingerprint;
  Digest request_digest;
  Digest response_digest;
  uint64_t observed_at = 0;
};

// Record of everything the attested run did. Every endpoint contact appears
// exactly once; the digest of the canonical JSON form is stable.
struct VerificationTranscript {
  Digest credential_digest;
  Digest anchor_key_fingerprint;
  std::vector<EndpointObservation> endpoint_observations;
  fed::ChainVerdict chain_verdict;
  std::string credential_result;  // "ok" or the failing error code name
  VerificationPolicy policy;
  uint64_t started_at = 0;
  uint64_t finished_at = 0;

  json to_json() const;
  static VerificationTranscript from_json(const json& j);
  Digest digest() const;
};

struct AttestedRun {
  VerificationTranscript transcript;
  Quote quote;
};

// Runs the full verification workload "inside" the simulated enclave: chain
// resolution, signature/status checks, credential verification, policy
// gates. Every endpoint reply's certificate is compared against the pinned
// set; a mismatch throws TransportCompromised (the DNS-poisoning detection)
// and no quote is produced. Any other failure — including an invalid
// credential or a broken chain — yields outcome 0 with a perfectly
// verifiable quote: the attestation vouches for the computation, not the
// answer.
//
// All inputs arrive through parameters. The function touches no wall clock,
// no environment, no filesystem.
AttestedRun run_attested_verification(
    const Platform& platform, const WorkloadDescriptor& workload,
    const SdJwtVc& credential, const Jwk& anchor_key,
    const std::map<std::string, Digest>& pinned_cert_fingerprints,
    fed::FederationTransport& transport, const Clock& clock);

}  // namespace ssibridge::enclave
