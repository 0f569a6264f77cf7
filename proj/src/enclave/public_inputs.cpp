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

#include "ssibridge/enclave/public_inputs.hpp"

#include <algorithm>

namespace ssibridge::enclave {

namespace {

void put_field(Bytes& out, BytesView field) {
  put_u32be(out, static_cast<uint32_t>(field.size()));
  out.insert(out.end(), field.begin(), field.end());
}

}  // namespace

Bytes PublicInputs::encode() const {
  std::vector<Digest> fps = endpoint_cert_fingerprints;
  std::sort(fps.begin(), fps.end());

  Bytes out;
  put_field(out, credential_digest.bytes);
  put_field(out, anchor_key_fingerprint.bytes);
  Bytes fp_field;
  put_u32be(fp_field, static_cast<uint32_t>(fps.size()));
  for (const auto& fp : fps)
    fp_field.insert(fp_field.end(), fp.bytes.begin(), fp.bytes.end());
  put_field(out, fp_field);
  put_field(out, measurement.bytes);
  put_field(out, policy_digest.bytes);
  Bytes ts;
  put_u64be(ts, verified_at);
  put_field(out, ts);
  Bytes bit{outcome};
  put_field(out, bit);
  return out;
}

Digest PublicInputs::digest() const {
  return sha256(encode());
}

json PublicInputs::to_json() const {
  std::vector<Digest> fps = endpoint_cert_fingerprints;
  std::sort(fps.begin(), fps.end());
  json fp_arr = json::array();
  for (const auto& fp : fps) fp_arr.push_back(fp.hex());
  return json{{"credential_digest", credential_digest.hex()},
              {"anchor_key_fingerprint", anchor_key_fingerprint.hex()},
              {"endpoint_cert_fingerprints", fp_arr},
              {"measurement", measurement.hex()},
              {"policy_digest", policy_digest.hex()},
              {"verified_at", verified_at},
              {"outcome", outcome}};
}

PublicInputs PublicInputs::from_json(const json& j) {
  PublicInputs p;
  p.credential_digest =
      Digest::from_hex(j.at("credential_digest").get<std::string>());
  p.anchor_key_fingerprint =
      Digest::from_hex(j.at("anchor_key_fingerprint").get<std::string>());
  for (const auto& fp : j.at("endpoint_cert_fingerprints"))
    p.endpoint_cert_fingerprints.push_back(
        Digest::from_hex(fp.get<std::string>()));
  p.measurement = Digest::from_hex(j.at("measurement").get<std::string>());
  p.policy_digest = Digest::from_hex(j.at("policy_digest").get<std::string>());
  p.verified_at = j.at("verified_at").get<uint64_t>();
  p.outcome = j.at("outcome").get<uint8_t>();
  return p;
}

}  // namespace ssibridge::enclave
