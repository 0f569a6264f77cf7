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
#include <vector>

#include "ssibridge/digest.hpp"
#include "ssibridge/jwk.hpp"

namespace ssibridge::enclave {

struct VerificationPolicy {
  std::vector<std::string> required_mark_types;
  int max_chain_depth = 8;
  int64_t max_clock_skew_s = 0;
  bool require_all_marks_active = true;

  json to_json() const;
  static VerificationPolicy from_json(const json& j);
  Digest digest() const;  // SHA-256 of the canonical JSON form
};

// Description of the code an attested run claims to execute. The
// measurement — SHA-256 of the canonical descriptor bytes — is what remote
// parties compare against published expected values. logic_digest stands in
// for the enclave binary hash and is itself part of the measured bytes.
struct WorkloadDescriptor {
  std::string name;
  std::string version;
  Digest logic_digest;
  VerificationPolicy policy;

  std::string canonical_bytes() const;
  json to_json() const;
  static WorkloadDescriptor from_json(const json& j);
};

Digest measure_workload(const WorkloadDescriptor& w);

// The credential-verification pipeline this library ships.
WorkloadDescriptor default_verification_workload(
    const VerificationPolicy& policy, const std::string& version = "1.0");

}  // namespace ssibridge::enclave
