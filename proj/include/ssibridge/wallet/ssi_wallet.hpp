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

#include <mutex>

#include "ssibridge/attested.hpp"
#include "ssibridge/enclave/run.hpp"
#include "ssibridge/ledger/index.hpp"

namespace ssibridge::wallet {

inline constexpr int64_t kDefaultValidityWindowS = 7 * 24 * 3600;  // 7 days

// Out-of-band federation trust material plus the transport to reach it.
struct FederationContext {
  Jwk anchor_key;  // public
  std::map<std::string, Digest> pinned_cert_fingerprints;
  fed::FederationTransport* transport = nullptr;
};

struct EnclaveContext {
  const enclave::Platform* platform = nullptr;
  enclave::WorkloadDescriptor workload;
  // Test seam: incremented once per enclave invocation when set, so the
  // preflight-before-enclave ordering is observable from outside.
  uint64_t* enclave_run_counter = nullptr;
};

// Everything the wallet keeps per attested credential; the quote and root
// cert are retained because publishing needs them as the proof witness.
struct AttestedRecord {
  AttestedCredential credential;
  enclave::Quote quote;
  enclave::VerificationTranscript transcript;
};

struct PresentationPackage {
  AttestedCredential attested;
  SdJwtVc original;  // full issuer token, possibly a disclosure subset
  ledger::EventRef event_ref;

  // JSON envelope {attested_jwt_vc, original_compact, event_ref} — the unit
  // exchanged between holder and verifier CLIs.
  json to_json() const;
  static PresentationPackage from_json(const json& j);
};

// The holder-side orchestrator for the whole pipeline: import, attested
// verification, on-ledger publication, presentation. Mutations serialize per
// wallet; distinct wallets are fully independent.
class SsiWallet {
 public:
  SsiWallet(Jwk wallet_key, std::string holder_did,
            int64_t validity_window_s = kDefaultValidityWindowS);

  const std::string& holder_did() const { return holder_did_; }
  const Jwk& wallet_key() const { return wallet_key_; }
  int64_t validity_window_s() const { return validity_window_s_; }

  void import_credential(const std::string& cred_id, const SdJwtVc& cred);
  SdJwtVc credential(const std::string& cred_id) const;
  std::vector<std::string> credential_ids() const;

  // Fig. 3: preflight outside the enclave (chain + marks + credential),
  // aborting with PreflightFailed before any enclave work when the verdict
  // is Invalid; then the attested run; then minting the attested JWT-VC.
  AttestedCredential create_attested_credential(const std::string& cred_id,
                                                const FederationContext& fed_ctx,
                                                const EnclaveContext& enclave_ctx,
                                                const Clock& clock);

  // Fig. 4: statement from the attested run, proof via the backend, one
  // submission transaction. Throws ProofRejected when the contract does not
  // emit an event (and on witness/statement mismatch before submission).
  ledger::EventRef publish_proof(const std::string& cred_id,
                                 ledger::Chain& chain,
                                 const ledger::VerifierContract& contract,
                                 const std::string& backend_id =
                                     "transcript-v1");

  // Fig. 5 holder side. Throws NotPublished before publish_proof succeeded.
  PresentationPackage present_package(const std::string& cred_id,
                                      const std::set<std::string>& selected_claims);
  // Full-disclosure convenience.
  PresentationPackage present_package(const std::string& cred_id);

  const AttestedRecord& attested_record(const std::string& cred_id) const;
  std::optional<ledger::EventRef> event_ref(const std::string& cred_id) const;

 private:
  Jwk wallet_key_;
  std::string holder_did_;
  int64_t validity_window_s_;
  std::map<std::string, std::string> credentials_;  // id -> compact form
  std::map<std::string, AttestedRecord> attested_;
  std::map<std::string, ledger::EventRef> event_refs_;
  mutable std::mutex mu_;
};

}  // namespace ssibridge::wallet
