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
#include <memory>
#include <vector>

#include "ssibridge/enclave/run.hpp"
#include "ssibridge/proof/statement.hpp"

namespace ssibridge::proof {

// Backend-opaque evidence for a ProofStatement.
struct Proof {
  std::string backend_id;
  Bytes payload;

  // JSON envelope {backend_id, payload_b64}.
  json to_json() const;
  static Proof from_json(const json& j);
};

// Everything the prover holds beyond the public statement.
struct Witness {
  enclave::Quote quote;
  enclave::VerificationTranscript transcript;
};

// A proof system for statements about attested verifications. The reference
// implementation is deliberately non-succinct; the interface is where a
// SNARK prover would drop in. Backends must label their properties honestly:
// the registry refuses a backend claiming zero-knowledge unless it also
// supplies a witness-indistinguishability self-test hook, so the claim can
// never be free-floating.
class ProofBackend {
 public:
  virtual ~ProofBackend() = default;
  virtual std::string backend_id() const = 0;
  virtual bool succinct() const = 0;
  virtual bool zero_knowledge() const = 0;
  // For zero_knowledge backends only: a self-test that must demonstrate two
  // distinct witnesses for one statement yielding indistinguishable proofs.
  virtual std::function<bool()> zk_self_test() const { return nullptr; }

  // Completeness is non-negotiable: prove must fail (throw) rather than emit
  // a proof its own verify would reject.
  virtual Proof prove(const ProofStatement& statement,
                      const Witness& witness) const = 0;
  virtual bool verify(const ProofStatement& statement, const Proof& proof,
                      const std::vector<Digest>& trusted_roots) const = 0;
};

class BackendRegistry {
 public:
  static BackendRegistry& instance();  // has the transcript backend preloaded

  BackendRegistry();
  void add(std::shared_ptr<ProofBackend> backend);  // throws BackendRejected
  const ProofBackend& get(std::string_view backend_id) const;  // throws UnknownBackend
  bool has(std::string_view backend_id) const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// Free-function form used by the ledger's verifier contract.
bool verify_proof(const std::string& backend_id, const ProofStatement& s,
                  const Proof& p, const std::vector<Digest>& trusted_roots,
                  const BackendRegistry& registry = BackendRegistry::instance());

}  // namespace ssibridge::proof
