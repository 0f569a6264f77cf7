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

#include <optional>
#include <string>

#include "ssibridge/jwk.hpp"

namespace ssibridge::scenario {

// Fully determines a reproducible run: same config, byte-identical outputs.
struct ScenarioConfig {
  uint64_t seed = 7;
  std::string outdir = ".";
  int64_t validity_window_s = 7 * 24 * 3600;
  std::string backend_id = "transcript-v1";
  std::optional<std::string> topology_path;  // default 4-entity demo if unset
  uint64_t epoch = 1700000000;               // simulated time origin
};

// Each runner executes one end-to-end story against an in-process
// federation, writes its artifacts under outdir, and returns a JSON summary
// with per-check booleans plus an overall "ok".
//
// attested-credential creation: preflight, enclave run, minting.
// Artifacts: credential.txt, attested.json. Also probes the failure path
// (revoked mark -> PreflightFailed with zero enclave runs).
json run_fig3(const ScenarioConfig& config);

// fig3 + publication: deploy verifier contract, prove, submit, index.
// Artifacts: chain.jsonl, package.json. Checks event uniqueness, index
// rebuild equality and reload identity.
json run_fig4(const ScenarioConfig& config);

// Verification-as-a-service over live HTTP: attest the service, verify
// remotely, relying-party accept; plus the measurement-mismatch negative.
json run_fig5(const ScenarioConfig& config);

// The availability asymmetry: with every trust-mark host down, fresh
// attestation fails while a previously published package still verifies
// offline — until its validity window lapses.
json run_outage(const ScenarioConfig& config);

json run_scenario(const std::string& name, const ScenarioConfig& config);

}  // namespace ssibridge::scenario
