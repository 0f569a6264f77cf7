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

#include "ssibridge/proof/statement.hpp"

namespace ssibridge::proof {

namespace {
void put_field(Bytes& out, BytesView field) {
  put_u32be(out, static_cast<uint32_t>(field.size()));
  out.insert(out.end(), field.begin(), field.end());
}
}  // namespace

Bytes ProofStatement::encode() const {
  Bytes out;
  put_field(out, root_of_trust_fingerprint.bytes);
  put_field(out, credential_digest.bytes);
  put_field(out, measurement.bytes);
  put_field(out, policy_digest.bytes);
  Bytes ts;
  put_u64be(ts, verified_at);
  put_field(out, ts);
  Bytes bit{outcome};
  put_field(out, bit);
  return out;
}

json ProofStatement::to_json() const {
  return json{{"root_of_trust_fingerprint", root_of_trust_fingerprint.hex()},
              {"credential_digest", credential_digest.hex()},
              {"measurement", measurement.hex()},
              {"policy_digest", policy_digest.hex()},
              {"verified_at", verified_at},
              {"outcome", outcome}};
}

ProofStatement ProofStatement::from_json(const json& j) {
  ProofStatement s;
  s.root_of_trust_fingerprint =
      Digest::from_hex(j.at("root_of_trust_fingerprint").get<std::string>());
  s.credential_digest =
      Digest::from_hex(j.at("credential_digest").get<std::string>());
  s.measurement = Digest::from_hex(j.at("measurement").get<std::string>());
  s.policy_digest = Digest::from_hex(j.at("policy_digest").get<std::string>());
  s.verified_at = j.at("verified_at").get<uint64_t>();
  s.outcome = j.at("outcome").get<uint8_t>();
  return s;
}

Digest statement_digest(const ProofStatement& s) {
  return sha256(s.encode());
}

}  // namespace ssibridge::proof
