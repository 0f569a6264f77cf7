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

#include <functional>
#include <thread>

#include "ssibridge/ledger/index.hpp"
#include "ssibridge/wallet/ssi_wallet.hpp"

namespace ssibridge::svc {

struct ServiceDescriptor {
  Jwk provider_public_key;
  enclave::WorkloadDescriptor service_workload;
  Digest expected_measurement;  // recomputable from service_workload
  std::string base_endpoint;

  json to_json() const;
  static ServiceDescriptor from_json(const json& j);
};

// What the service's quote commits to — the service-attestation variant of
// the public-inputs encoding, length-prefixed in this field order:
// measurement (32), provider key fingerprint (32), nonce, timestamp (8,
// big-endian).
struct ServiceBindingInputs {
  Digest measurement;
  Digest provider_key_fingerprint;
  Bytes nonce;
  uint64_t timestamp = 0;

  Bytes encode() const;
  Digest digest() const;
};

// Freshness-bound evidence that the service runs the published workload on
// an attestation-capable platform, countersigned by the provider.
struct ServiceAttestation {
  Digest measurement;
  std::array<uint8_t, 64> report_data{};
  uint64_t timestamp = 0;
  Bytes attestation_signature;  // platform AK over (measurement||report_data||timestamp)
  enclave::Cert platform_cert;
  enclave::Cert root_cert;
  Digest provider_key_fingerprint;
  Bytes nonce;                 // echo of the client challenge
  Bytes provider_signature;    // provider key over the canonical body

  Bytes attestation_signed_bytes() const;
  std::string provider_signed_body() const;
  json to_json() const;
  static ServiceAttestation from_json(const json& j);
};

struct ServiceConfig {
  uint64_t platform_seed = 1;
  uint64_t key_seed = 2;
  std::string provider_id = "confidential-verifier.example";
  enclave::WorkloadDescriptor workload;
  int64_t validity_window_s = wallet::kDefaultValidityWindowS;
};

// The Fig. 5 verification-as-a-service: wraps the attested-verification
// pipeline plus on-ledger publication behind HTTP. Handlers keep everything
// in locals — the service retains no credential bytes after responding,
// which state_dump()/retains_bytes() make checkable.
//
//   GET  /descriptor                         public workload + measurement
//   POST /attest  {nonce_b64}                ServiceAttestation
//   POST /verify  {sd_jwt_vc_compact}        {attested_jwt_vc, event_ref,
//                                             verdict} | {error}
//   GET  /events?credential_digest=<hex>     [LedgerEvent]
//   GET  /healthz                            {ok: true}
class VerifierService {
 public:
  using TransportFactory =
      std::function<std::unique_ptr<fed::FederationTransport>()>;

  VerifierService(ServiceConfig config, Jwk anchor_key,
                  std::map<std::string, Digest> pinned_cert_fingerprints,
                  TransportFactory transport_factory, ledger::Chain& chain,
                  ledger::VerifierContract contract, const Clock& clock,
                  int port = 0);
  ~VerifierService();

  VerifierService(const VerifierService&) = delete;
  VerifierService& operator=(const VerifierService&) = delete;

  int port() const { return port_; }
  std::string base_url() const;
  ServiceDescriptor descriptor() const;
  const enclave::Platform& platform() const { return platform_; }
  Jwk provider_public_key() const { return provider_key_.public_only(); }

  void stop();
  void wait_until_stopped();

  // Everything the service process holds, serialized; the statelessness
  // check scans this for credential bytes after requests complete.
  json state_dump() const;
  bool retains_bytes(std::string_view needle) const;

 private:
  struct Impl;
  json handle_verify(const std::string& compact_credential);

  ServiceConfig config_;
  enclave::Platform platform_;
  Jwk provider_key_;
  Jwk anchor_key_;
  std::map<std::string, Digest> pins_;
  TransportFactory transport_factory_;
  ledger::Chain& chain_;
  ledger::VerifierContract contract_;
  const Clock& clock_;
  std::unique_ptr<Impl> impl_;
  int port_ = 0;
  std::thread serving_thread_;
};

}  // namespace ssibridge::svc
