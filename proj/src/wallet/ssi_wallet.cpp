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

#include "ssibridge/wallet/ssi_wallet.hpp"

#include "ssibridge/error.hpp"
#include "ssibridge/proof/transcript_backend.hpp"

namespace ssibridge::wallet {

json PresentationPackage::to_json() const {
  return json{{"attested_jwt_vc", attested.jwt_vc.compact()},
              {"original_compact", original.compact_form()},
              {"event_ref", event_ref.to_json()}};
}

PresentationPackage PresentationPackage::from_json(const json& j) {
  PresentationPackage p;
  p.attested =
      AttestedCredential::parse(j.at("attested_jwt_vc").get<std::string>());
  p.original = SdJwtVc::parse(j.at("original_compact").get<std::string>());
  p.event_ref = ledger::EventRef::from_json(j.at("event_ref"));
  return p;
}

SsiWallet::SsiWallet(Jwk wallet_key, std::string holder_did,
                     int64_t validity_window_s)
    : wallet_key_(std::move(wallet_key)),
      holder_did_(std::move(holder_did)),
      validity_window_s_(validity_window_s) {}

void SsiWallet::import_credential(const std::string& cred_id,
                                  const SdJwtVc& cred) {
  std::lock_guard lock(mu_);
  credentials_[cred_id] = cred.compact_form();
}

SdJwtVc SsiWallet::credential(const std::string& cred_id) const {
  std::lock_guard lock(mu_);
  auto it = credentials_.find(cred_id);
  if (it == credentials_.end()) throw Error(Errc::UnknownCredential, cred_id);
  return SdJwtVc::parse(it->second);
}

std::vector<std::string> SsiWallet::credential_ids() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> ids;
  for (const auto& [id, c] : credentials_) ids.push_back(id);
  return ids;
}

AttestedCredential SsiWallet::create_attested_credential(
    const std::string& cred_id, const FederationContext& fed_ctx,
    const EnclaveContext& enclave_ctx, const Clock& clock) {
  SdJwtVc cred = credential(cred_id);

  // (i) Preflight outside the enclave, saving enclave work when the
  // federation already says no.
  fed::ChainVerdict preflight;
  const std::string issuer_id =
      cred.issuer_jwt.payload().value("iss", std::string());
  try {
    fed::TrustChain chain = resolve_trust_chain(
        issuer_id, *fed_ctx.transport, enclave_ctx.workload.policy.max_chain_depth);
    preflight = verify_trust_chain(chain, fed_ctx.anchor_key,
                                   *fed_ctx.transport, clock);
    if (preflight.valid) {
      // Credential itself is also checked before spending enclave time.
      verify_sd_jwt_vc(cred, chain.leaf().fields.jwks, clock,
                       enclave_ctx.workload.policy.max_clock_skew_s);
    }
  } catch (const Error& e) {
    throw Error(Errc::PreflightFailed, std::string(e.what()));
  }
  if (!preflight.valid)
    throw Error(Errc::PreflightFailed,
                std::string(fed::chain_reason_name(preflight.reason)) + " at " +
                    preflight.offending_entity);

  // (ii) The attested run. TransportCompromised propagates as-is.
  if (enclave_ctx.enclave_run_counter) ++*enclave_ctx.enclave_run_counter;
  enclave::AttestedRun run = enclave::run_attested_verification(
      *enclave_ctx.platform, enclave_ctx.workload, cred, fed_ctx.anchor_key,
      fed_ctx.pinned_cert_fingerprints, *fed_ctx.transport, clock);

  // (iii) Mint and store. The quote's outcome is authoritative even when the
  // federation changed its mind between the two phases.
  AttestedCredential attested =
      issue_attested_jwt_vc(wallet_key_, holder_did_, cred, run.quote,
                            preflight, validity_window_s_, clock);
  {
    std::lock_guard lock(mu_);
    attested_.insert_or_assign(
        cred_id, AttestedRecord{attested, run.quote, run.transcript});
    event_refs_.erase(cred_id);
  }
  return attested;
}

ledger::EventRef SsiWallet::publish_proof(const std::string& cred_id,
                                          ledger::Chain& chain,
                                          const ledger::VerifierContract& contract,
                                          const std::string& backend_id) {
  AttestedRecord record = attested_record(cred_id);

  // The public statement is derived from the attested credential's claims;
  // a tampered credential surfaces as a witness/statement mismatch.
  proof::ProofStatement statement;
  statement.root_of_trust_fingerprint =
      record.credential.quote().root_cert.fingerprint();
  statement.credential_digest = record.credential.original_credential_digest();
  statement.measurement = record.credential.quote().measurement;
  statement.policy_digest = record.quote.bound_inputs.policy_digest;
  statement.verified_at = record.credential.verified_at();
  statement.outcome = record.credential.outcome();

  proof::Proof proof_value;
  try {
    const proof::ProofBackend& backend =
        proof::BackendRegistry::instance().get(backend_id);
    proof_value =
        backend.prove(statement, proof::Witness{record.quote, record.transcript});
  } catch (const Error& e) {
    throw Error(Errc::ProofRejected, std::string(e.what()));
  }

  ledger::TxReceipt receipt =
      chain.submit_proof_tx(contract, statement, proof_value);
  if (!receipt.success)
    throw Error(Errc::ProofRejected,
                "contract rejected tx " + receipt.tx_digest.hex());

  ledger::EventRef ref{statement.credential_digest, receipt.tx_digest,
                       receipt.block_number};
  {
    std::lock_guard lock(mu_);
    event_refs_[cred_id] = ref;
  }
  return ref;
}

PresentationPackage SsiWallet::present_package(
    const std::string& cred_id, const std::set<std::string>& selected_claims) {
  SdJwtVc original = credential(cred_id);
  PresentationPackage pkg;
  {
    std::lock_guard lock(mu_);
    auto att = attested_.find(cred_id);
    auto ref = event_refs_.find(cred_id);
    if (att == attested_.end() || ref == event_refs_.end())
      throw Error(Errc::NotPublished, cred_id);
    pkg.attested = att->second.credential;
    pkg.event_ref = ref->second;
  }
  pkg.original = present(original, selected_claims);
  return pkg;
}

PresentationPackage SsiWallet::present_package(const std::string& cred_id) {
  auto names = credential(cred_id).disclosable_names();
  return present_package(cred_id,
                         std::set<std::string>(names.begin(), names.end()));
}

const AttestedRecord& SsiWallet::attested_record(const std::string& cred_id) const {
  std::lock_guard lock(mu_);
  auto it = attested_.find(cred_id);
  if (it == attested_.end()) throw Error(Errc::UnknownCredential, cred_id);
  return it->second;
}

std::optional<ledger::EventRef> SsiWallet::event_ref(
    const std::string& cred_id) const {
  std::lock_guard lock(mu_);
  auto it = event_refs_.find(cred_id);
  if (it == event_refs_.end()) return std::nullopt;
  return it->second;
}

}  // namespace ssibridge::wallet
