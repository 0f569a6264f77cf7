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

#include "ssibridge/svc/service.hpp"

namespace ssibridge::svc {

// Proof that the attestation exchange succeeded. Only attest_service can
// construct one, so a credential cannot be sent to a service this client has
// not attested — the check is structural, not procedural.
class ServiceHandle {
 public:
  const std::string& base_url() const { return base_url_; }
  const ServiceAttestation& attestation() const { return attestation_; }

 private:
  friend ServiceHandle attest_service(const std::string&, const Jwk&,
                                      const Digest&, const Digest&,
                                      BytesView);
  ServiceHandle(std::string base_url, ServiceAttestation attestation)
      : base_url_(std::move(base_url)), attestation_(std::move(attestation)) {}

  std::string base_url_;
  ServiceAttestation attestation_;
};

// Challenge-response attestation of the service. Expected values — the
// provider's public key, the workload measurement, and the platform root
// fingerprint — are explicit parameters obtained out-of-band; this client
// never bootstraps them from the service itself. Throws
// AttestationFailed(reason) or Unreachable; on success the returned handle
// is the only way to reach request_verification.
ServiceHandle attest_service(const std::string& base_url,
                             const Jwk& provider_pubkey,
                             const Digest& expected_measurement,
                             const Digest& trusted_platform_root_fp,
                             BytesView nonce);

struct VerificationResponse {
  AttestedCredential attested;
  ledger::EventRef event_ref;
  json verdict;
};

// Sends the credential to an attested service and returns its results.
// Server-side pipeline failures surface as the structured error they carried
// (e.g. PreflightFailed); transport failures as Unreachable.
VerificationResponse request_verification(const ServiceHandle& handle,
                                          const SdJwtVc& credential);

ServiceDescriptor fetch_descriptor(const std::string& base_url);

}  // namespace ssibridge::svc
