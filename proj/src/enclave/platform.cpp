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

#include "ssibridge/enclave/platform.hpp"

namespace ssibridge::enclave {

namespace {
constexpr uint64_t kCertLifetime = 10ull * 365 * 24 * 3600;
}

std::string Cert::tbs_bytes() const {
  return json{{"subject", subject},
              {"subject_key", subject_key.to_json(false)},
              {"issuer", issuer},
              {"not_before", not_before},
              {"not_after", not_after}}
      .dump();
}

json Cert::to_json() const {
  return json{{"subject", subject},
              {"subject_key", subject_key.to_json(false)},
              {"issuer", issuer},
              {"not_before", not_before},
              {"not_after", not_after},
              {"signature", b64url_encode(signature)}};
}

Cert Cert::from_json(const json& j) {
  Cert c;
  c.subject = j.at("subject").get<std::string>();
  c.subject_key = Jwk::from_json(j.at("subject_key"));
  c.issuer = j.at("issuer").get<std::string>();
  c.not_before = j.at("not_before").get<uint64_t>();
  c.not_after = j.at("not_after").get<uint64_t>();
  c.signature = b64url_decode(j.at("signature").get<std::string>());
  return c;
}

Digest Cert::fingerprint() const {
  return sha256(to_json().dump());
}

bool Cert::verify_signed_by(const Jwk& issuer_key) const {
  return verify_bytes(issuer_key.public_only(), to_bytes(tbs_bytes()),
                      signature);
}

Bytes Platform::attestation_sign(BytesView message) const {
  return sign_bytes(attestation_key_, message);
}

bool Platform::chain_valid() const {
  return root_cert_.verify_signed_by(root_cert_.subject_key) &&
         platform_cert_.verify_signed_by(root_cert_.subject_key);
}

json Platform::to_json() const {
  return json{{"root_cert", root_cert_.to_json()},
              {"platform_cert", platform_cert_.to_json()}};
}

Platform new_platform(uint64_t seed, uint64_t provisioned_at) {
  Rng rng(seed);
  Jwk root_key = generate_key("platform-root", rng);
  Jwk attestation_key = generate_key("platform-attestation", rng);

  Platform p;
  p.root_cert_.subject = "simulated-vendor-root";
  p.root_cert_.subject_key = root_key.public_only();
  p.root_cert_.issuer = "simulated-vendor-root";
  p.root_cert_.not_before = provisioned_at;
  p.root_cert_.not_after = provisioned_at + kCertLifetime;
  p.root_cert_.signature =
      sign_bytes(root_key, to_bytes(p.root_cert_.tbs_bytes()));

  p.platform_cert_.subject = "simulated-platform";
  p.platform_cert_.subject_key = attestation_key.public_only();
  p.platform_cert_.issuer = "simulated-vendor-root";
  p.platform_cert_.not_before = provisioned_at;
  p.platform_cert_.not_after = provisioned_at + kCertLifetime;
  p.platform_cert_.signature =
      sign_bytes(root_key, to_bytes(p.platform_cert_.tbs_bytes()));

  p.attestation_key_ = std::move(attestation_key);
  // The root private key is dropped here: nothing can mint further platform
  // certs for this root, matching a vendor root held offline.
  return p;
}

}  // namespace ssibridge::enclave
