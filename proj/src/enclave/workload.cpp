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

#include "ssibridge/enclave/workload.hpp"

namespace ssibridge::enclave {

json VerificationPolicy::to_json() const {
  return json{{"required_mark_types", required_mark_types},
              {"max_chain_depth", max_chain_depth},
              {"max_clock_skew_s", max_clock_skew_s},
              {"require_all_marks_active", require_all_marks_active}};
}

VerificationPolicy VerificationPolicy::from_json(const json& j) {
  VerificationPolicy p;
  p.required_mark_types =
      j.at("required_mark_types").get<std::vector<std::string>>();
  p.max_chain_depth = j.at("max_chain_depth").get<int>();
  p.max_clock_skew_s = j.at("max_clock_skew_s").get<int64_t>();
  p.require_all_marks_active = j.at("require_all_marks_active").get<bool>();
  return p;
}

Digest VerificationPolicy::digest() const {
  return sha256(to_json().dump());
}

std::string WorkloadDescriptor::canonical_bytes() const {
  return to_json().dump();
}

json WorkloadDescriptor::to_json() const {
  return json{{"name", name},
              {"version", version},
              {"logic_digest", logic_digest.hex()},
              {"policy", policy.to_json()}};
}

WorkloadDescriptor WorkloadDescriptor::from_json(const json& j) {
  WorkloadDescriptor w;
  w.name = j.at("name").get<std::string>();
  w.version = j.at("version").get<std::string>();
  w.logic_digest = Digest::from_hex(j.at("logic_digest").get<std::string>());
  w.policy = VerificationPolicy::from_json(j.at("policy"));
  return w;
}

Digest measure_workload(const WorkloadDescriptor& w) {
  return sha256(w.canonical_bytes());
}

WorkloadDescriptor default_verification_workload(
    const VerificationPolicy& policy, const std::string& version) {
  // The logic text names the pipeline steps; anyone can recompute its digest
  // and the resulting measurement from the published descriptor.
  static const char kLogic[] =
      "resolve-trust-chain; verify-chain-signatures; query-trust-mark-status; "
      "verify-sd-jwt-vc; pin-endpoint-certs; bind-public-inputs; emit-quote";
  WorkloadDescriptor w;
  w.name = "sdjwt-federation-verifier";
  w.version = version;
  w.logic_digest = sha256(std::string_view(kLogic));
  w.policy = policy;
  return w;
}

}  // namespace ssibridge::enclave
