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

#include <string>

#include "ssibridge/jwk.hpp"

namespace ssibridge::enclave {

// Signed endorsement binding a subject to a public key, the shape real
// attestation chains (PCK) use. Fingerprint covers the full cert including
// its signature.
struct Cert {
  std::string subject;
  Jwk subject_key;  // public half
  std::string issuer;
  uint64_t not_before = 0;
  uint64_t not_after = 0;
  Bytes signature;

  std::string tbs_bytes() const;  // canonical to-be-signed JSON
  json to_json() const;
  static Cert from_json(const json& j);
  Digest fingerprint() const;

  bool verify_signed_by(const Jwk& issuer_key) const;
};

// Simulated attestation-capable platform: a self-signed vendor root endorses
// a platform certificate whose subject key is the attestation key. Two-level
// chain, mirroring PCK-style verification at the smallest useful depth. The
// attestation private key lives only inside this value; serialization emits
// the certificate chain and nothing else.
class Platform {
 public:
  const Cert& root_cert() const { return root_cert_; }
  const Cert& platform_cert() const { return platform_cert_; }
  Digest root_fingerprint() const { return root_cert_.fingerprint(); }

  Bytes attestation_sign(BytesView message) const;

  // Chain self-check: root self-signed, platform cert signed by root.
  bool chain_valid() const;

  // Public material only. The attestation private key has no serialized form.
  json to_json() const;

  friend Platform new_platform(uint64_t seed, uint64_t provisioned_at);

 private:
  Cert root_cert_;
  Cert platform_cert_;
  Jwk attestation_key_;  // holds the private half
};

Platform new_platform(uint64_t seed, uint64_t provisioned_at = 0);

}  // namespace ssibridge::enclave
