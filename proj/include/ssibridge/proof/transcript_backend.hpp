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

#include "ssibridge/proof/backend.hpp"

namespace ssibridge::proof {

// Reference backend: the proof payload is the quote plus its endorsement
// chain, and verification re-runs quote verification against the statement.
// Sound, but neither succinct nor zero-knowledge — the proof reveals the
// quote. It self-describes accordingly.
class TranscriptBackend : public ProofBackend {
 public:
  static constexpr char kId[] = "transcript-v1";

  std::string backend_id() const override { return kId; }
  bool succinct() const override { return false; }
  bool zero_knowledge() const override { return false; }

  Proof prove(const ProofStatement& statement,
              const Witness& witness) const override;
  bool verify(const ProofStatement& statement, const Proof& proof,
              const std::vector<Digest>& trusted_roots) const override;
};

// The statement a given attested run supports.
ProofStatement statement_from_quote(const enclave::Quote& quote);

}  // namespace ssibridge::proof
