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

#include "ssibridge/scenario.hpp"

#include <filesystem>
#include <fstream>

#include "ssibridge/error.hpp"
#include "ssibridge/federation/http.hpp"
#include "ssibridge/proof/transcript_backend.hpp"
#include "ssibridge/svc/client.hpp"
#include "ssibridge/svc/service.hpp"
#include "ssibridge/wallet/itwallet.hpp"
#include "ssibridge/wallet/relying_party.hpp"

namespace ssibridge::scenario {

namespace {

namespace fs = std::filesystem;

constexpr char kCredId[] = "healthcare-card";

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out << content;
}

// Shared stage: federation, clocks, keys, the issued credential inside the
// IT-Wallet, and the holder's SSI wallet with the exported credential.
struct Stage {
  ScenarioConfig config;
  ManualClock clock;
  fed::FederationTopology topology;
  std::unique_ptr<fed::MockFederation> federation;
  std::unique_ptr<fed::InProcessTransport> transport;
  std::unique_ptr<fed::CountingTransport> counting;
  enclave::Platform platform;
  enclave::WorkloadDescriptor workload;
  wallet::SimItWallet itwallet{"holder"};
  std::unique_ptr<wallet::SsiWallet> ssi_wallet;
  uint64_t enclave_runs = 0;

  explicit Stage(const ScenarioConfig& cfg)
      : config(cfg),
        clock(cfg.epoch),
        topology(cfg.topology_path
                     ? fed::FederationTopology::load(*cfg.topology_path)
                     : fed::FederationTopology::default_demo()),
        platform(enclave::new_platform(cfg.seed ^ 0x706c61746605ull)) {
    federation =
        std::make_unique<fed::MockFederation>(topology, cfg.seed, cfg.epoch);
    transport = std::make_unique<fed::InProcessTransport>(*federation);
    counting = std::make_unique<fed::CountingTransport>(*transport);

    enclave::VerificationPolicy policy;
    policy.required_mark_types = {"federation-membership"};
    policy.max_chain_depth = 8;
    policy.max_clock_skew_s = 60;
    workload = enclave::default_verification_workload(policy);

    Rng rng(cfg.seed ^ 0x77616c6c65740aull);
    Jwk wallet_key = generate_key("holder-wallet", rng);
    ssi_wallet = std::make_unique<wallet::SsiWallet>(
        wallet_key, "did:example:holder", cfg.validity_window_s);

    // Issue the credential into the IT-Wallet, then export after eID login.
    Jwk issuer_key = federation->entity_signing_key("qeaa-provider");
    Rng salt_rng(cfg.seed ^ 0x73616c740bull);
    json visible{{"credential_kind", "healthcare-card"}};
    json disclosable{{"given_name", "Ada"},
                     {"family_name", "Lovelace"},
                     {"date_of_birth", "1815-12-10"},
                     {"health_card_number", "IT-HC-0001"}};
    SdJwtVc cred = issue_sd_jwt_vc(
        issuer_key, "qeaa-provider", "did:example:holder", visible,
        disclosable, "https://credentials.example/healthcare-card",
        30ll * 24 * 3600, clock, salt_rng);
    itwallet.store_credential(kCredId, cred);
    itwallet.login();
    SdJwtVc exported = itwallet.export_credential(kCredId);
    ssi_wallet->import_credential(kCredId, exported);
  }

  wallet::FederationContext fed_ctx() {
    return {federation->anchor_public_key(),
            federation->pinned_cert_fingerprints(), counting.get()};
  }
  wallet::EnclaveContext enclave_ctx() {
    return {&platform, workload, &enclave_runs};
  }
};

json fig3_impl(Stage& stage, const fs::path& outdir) {
  stage.clock.advance(10);
  AttestedCredential attested = stage.ssi_wallet->create_attested_credential(
      kCredId, stage.fed_ctx(), stage.enclave_ctx(), stage.clock);
  const wallet::AttestedRecord& record =
      stage.ssi_wallet->attested_record(kCredId);

  // Check 1: the quote verifies against the platform root with the exact
  // bound inputs of this run.
  bool quote_ok =
      enclave::verify_quote(record.quote, stage.platform.root_cert(),
                            enclave::measure_workload(stage.workload),
                            record.quote.bound_inputs) ==
      enclave::QuoteVerdict::Valid;

  // Check 2: report_data binds the credential digest and every endpoint
  // cert fingerprint observed during the run.
  SdJwtVc cred = stage.ssi_wallet->credential(kCredId);
  bool binds_credential = record.quote.bound_inputs.credential_digest ==
                          credential_digest(cred.compact_form());
  std::set<Digest> observed;
  for (const auto& o : record.transcript.endpoint_observations)
    if (!o.cert_fingerprint.is_zero()) observed.insert(o.cert_fingerprint);
  bool binds_certs =
      std::set<Digest>(record.quote.bound_inputs.endpoint_cert_fingerprints.begin(),
                       record.quote.bound_inputs.endpoint_cert_fingerprints.end()) ==
          observed &&
      record.quote.report_data_matches(record.quote.bound_inputs);

  // Check 3: preflight failure stops everything before the enclave. Revoke
  // one mark, attempt again, count enclave invocations; then restore.
  std::string probe_mark =
      stage.federation->mark_ids_of("qeaa-provider").front();
  stage.federation->revoke_mark(probe_mark);
  uint64_t runs_before = stage.enclave_runs;
  bool preflight_failed = false;
  try {
    stage.ssi_wallet->create_attested_credential(
        kCredId, stage.fed_ctx(), stage.enclave_ctx(), stage.clock);
  } catch (const Error& e) {
    preflight_failed = e.code() == Errc::PreflightFailed;
  }
  uint64_t probe_enclave_calls = stage.enclave_runs - runs_before;
  bool enclave_untouched = probe_enclave_calls == 0;
  stage.federation->reinstate_mark(probe_mark);
  // Re-attest so downstream stages work from a published healthy state.
  stage.clock.advance(5);
  attested = stage.ssi_wallet->create_attested_credential(
      kCredId, stage.fed_ctx(), stage.enclave_ctx(), stage.clock);

  write_file(outdir / "credential.txt", cred.compact_form());
  write_file(outdir / "attested.json",
             json{{"attested_jwt_vc", attested.jwt_vc.compact()},
                  {"transcript",
                   stage.ssi_wallet->attested_record(kCredId).transcript.to_json()}}
                 .dump(2) +
                 "\n");

  bool ok = quote_ok && binds_credential && binds_certs && preflight_failed &&
            enclave_untouched && attested.outcome() == 1;
  return json{{"scenario", "fig3"},
              {"ok", ok},
              {"quote_verifies", quote_ok},
              {"report_data_binds_credential_digest", binds_credential},
              {"report_data_binds_endpoint_certs", binds_certs},
              {"preflight_failure_detected", preflight_failed},
              {"enclave_calls_during_failed_preflight", probe_enclave_calls},
              {"outcome", attested.outcome()},
              {"credential_file", (outdir / "credential.txt").string()},
              {"attested_file", (outdir / "attested.json").string()}};
}

struct Fig4Result {
  json summary;
  Digest cred_digest;
};

Fig4Result fig4_impl(Stage& stage, const fs::path& outdir,
                     ledger::Chain& chain) {
  json fig3 = fig3_impl(stage, outdir);

  ledger::Index live = ledger::Index::subscribed(chain);
  ledger::VerifierContract contract = chain.deploy_verifier(
      stage.config.backend_id, {stage.platform.root_fingerprint()},
      enclave::measure_workload(stage.workload));

  stage.clock.advance(5);
  ledger::EventRef ref =
      stage.ssi_wallet->publish_proof(kCredId, chain, contract,
                                      stage.config.backend_id);

  Digest cred_digest =
      credential_digest(stage.ssi_wallet->credential(kCredId).compact_form());
  auto events = chain.get_events({.credential_digest = cred_digest});
  bool one_event = events.size() == 1;
  bool ref_resolves = ledger::resolve_event(chain, ref).has_value();

  ledger::Index rebuilt = ledger::Index::rebuild(chain);
  bool index_match = rebuilt == live;

  const fs::path chain_path = outdir / "chain.jsonl";
  chain.save(chain_path.string());
  ledger::Chain reloaded = ledger::Chain::load(chain_path.string());
  bool reload_match = ledger::Index::rebuild(reloaded) == live;

  wallet::PresentationPackage pkg = stage.ssi_wallet->present_package(kCredId);
  write_file(outdir / "package.json", pkg.to_json().dump(2) + "\n");
  write_file(outdir / "verifier.json",
             json{{"contract", contract.to_json()},
                  {"trusted_root_fingerprint",
                   stage.platform.root_fingerprint().hex()},
                  {"expected_measurement",
                   enclave::measure_workload(stage.workload).hex()}}
                 .dump(2) +
                 "\n");

  bool ok = fig3.at("ok").get<bool>() && one_event && ref_resolves &&
            index_match && reload_match;
  json summary{{"scenario", "fig4"},
               {"ok", ok},
               {"fig3", fig3},
               {"proof_verified_events", events.size()},
               {"event_ref_resolves", ref_resolves},
               {"rebuilt_index_matches_live", index_match},
               {"reloaded_chain_matches", reload_match},
               {"chain_file", chain_path.string()},
               {"package_file", (outdir / "package.json").string()}};
  return {summary, cred_digest};
}

}  // namespace

json run_fig3(const ScenarioConfig& config) {
  Stage stage(config);
  return fig3_impl(stage, config.outdir);
}

json run_fig4(const ScenarioConfig& config) {
  Stage stage(config);
  ledger::Chain chain(config.epoch);
  return fig4_impl(stage, config.outdir, chain).summary;
}

json run_fig5(const ScenarioConfig& config) {
  Stage stage(config);
  const fs::path outdir = config.outdir;
  ledger::Chain chain(config.epoch);
  ledger::VerifierContract contract;

  // The service gets its own platform (the cloud CVM) and a transport
  // factory so concurrent requests stay isolated.
  svc::ServiceConfig svc_config;
  svc_config.platform_seed = config.seed ^ 0x637653aull;
  svc_config.key_seed = config.seed ^ 0x70726f76ull;
  svc_config.workload = stage.workload;
  svc_config.validity_window_s = config.validity_window_s;

  contract = chain.deploy_verifier(
      config.backend_id,
      {enclave::new_platform(svc_config.platform_seed).root_fingerprint()},
      enclave::measure_workload(stage.workload));

  auto factory = [&stage]() -> std::unique_ptr<fed::FederationTransport> {
    return std::make_unique<fed::InProcessTransport>(*stage.federation);
  };
  svc::VerifierService service(svc_config, stage.federation->anchor_public_key(),
                               stage.federation->pinned_cert_fingerprints(),
                               factory, chain, contract, stage.clock);

  // Out-of-band expectations for the client.
  svc::ServiceDescriptor descriptor = service.descriptor();
  Digest platform_root_fp = service.platform().root_fingerprint();

  stage.clock.advance(10);
  Rng nonce_rng(config.seed ^ 0x6e6f6e6365ull);
  Bytes nonce = nonce_rng.bytes(32);
  bool attest_ok = false;
  std::optional<svc::ServiceHandle> handle;
  try {
    handle = svc::attest_service(service.base_url(),
                                 descriptor.provider_public_key,
                                 descriptor.expected_measurement,
                                 platform_root_fp, nonce);
    attest_ok = true;
  } catch (const Error&) {
  }

  bool remote_ok = false;
  bool rp_accepts = false;
  bool stateless_ok = false;
  SdJwtVc cred = stage.ssi_wallet->credential(kCredId);
  if (handle) {
    svc::VerificationResponse response =
        svc::request_verification(*handle, cred);
    remote_ok = response.attested.outcome() == 1;

    wallet::PresentationPackage pkg;
    pkg.attested = response.attested;
    pkg.original = cred;
    pkg.event_ref = response.event_ref;
    write_file(outdir / "package.json", pkg.to_json().dump(2) + "\n");

    stage.clock.advance(5);
    wallet::RpVerdict verdict = wallet::relying_party_verify(
        pkg, chain, {platform_root_fp}, descriptor.expected_measurement,
        stage.clock);
    rp_accepts = verdict.accepted;

    // The service must hold no bytes of the credential once it responded.
    std::string compact = cred.compact_form();
    stateless_ok = !service.retains_bytes(compact) &&
                   !service.retains_bytes(compact.substr(0, 40));
  }

  // Negative probe: a version-bumped workload must fail attestation with a
  // measurement mismatch.
  bool mismatch_detected = false;
  {
    svc::ServiceConfig bumped = svc_config;
    bumped.workload = enclave::default_verification_workload(
        stage.workload.policy, "1.1-modified");
    svc::VerifierService modified(bumped, stage.federation->anchor_public_key(),
                                  stage.federation->pinned_cert_fingerprints(),
                                  factory, chain, contract, stage.clock);
    try {
      svc::attest_service(modified.base_url(), descriptor.provider_public_key,
                          descriptor.expected_measurement, platform_root_fp,
                          nonce);
    } catch (const Error& e) {
      mismatch_detected =
          e.code() == Errc::AttestationFailed &&
          std::string(e.what()).find("MeasurementMismatch") != std::string::npos;
    }
  }
  service.stop();

  chain.save((outdir / "chain.jsonl").string());
  bool ok = attest_ok && remote_ok && rp_accepts && stateless_ok &&
            mismatch_detected;
  return json{{"scenario", "fig5"},
              {"ok", ok},
              {"service_attested", attest_ok},
              {"remote_verification_ok", remote_ok},
              {"relying_party_accepts", rp_accepts},
              {"service_stateless", stateless_ok},
              {"measurement_mismatch_detected", mismatch_detected},
              {"package_file", (outdir / "package.json").string()}};
}

json run_outage(const ScenarioConfig& config) {
  Stage stage(config);
  const fs::path outdir = config.outdir;
  ledger::Chain chain(config.epoch);
  Fig4Result fig4 = fig4_impl(stage, outdir, chain);

  wallet::PresentationPackage pkg = stage.ssi_wallet->present_package(kCredId);

  // Take down every trust-mark host.
  stage.federation->inject_outage_all_mark_hosts();

  // (i) Fresh attestation now fails.
  bool fresh_fails = false;
  try {
    stage.ssi_wallet->create_attested_credential(
        kCredId, stage.fed_ctx(), stage.enclave_ctx(), stage.clock);
  } catch (const Error& e) {
    fresh_fails = e.code() == Errc::PreflightFailed;
  }

  // (ii) The previously published package still verifies, touching the
  // federation zero times.
  stage.clock.advance(60);
  uint64_t calls_before = stage.counting->total_calls();
  wallet::RpVerdict offline = wallet::relying_party_verify(
      pkg, chain, {stage.platform.root_fingerprint()},
      enclave::measure_workload(stage.workload), stage.clock);
  bool zero_calls = stage.counting->total_calls() == calls_before;

  // (iii) Past the validity window the same package goes stale.
  uint64_t t1 = pkg.attested.verified_at();
  stage.clock.set(t1 + static_cast<uint64_t>(pkg.attested.validity_window_s()));
  wallet::RpVerdict stale = wallet::relying_party_verify(
      pkg, chain, {stage.platform.root_fingerprint()},
      enclave::measure_workload(stage.workload), stage.clock);

  bool ok = fig4.summary.at("ok").get<bool>() && fresh_fails &&
            offline.accepted && zero_calls && !stale.accepted &&
            stale.reason == wallet::RpReason::Stale;
  return json{{"scenario", "outage"},
              {"ok", ok},
              {"fig4", fig4.summary},
              {"fresh_attestation_fails", fresh_fails},
              {"published_package_accepted_offline", offline.accepted},
              {"zero_federation_calls", zero_calls},
              {"stale_after_window",
               !stale.accepted && stale.reason == wallet::RpReason::Stale}};
}

json run_scenario(const std::string& name, const ScenarioConfig& config) {
  if (name == "fig3") return run_fig3(config);
  if (name == "fig4") return run_fig4(config);
  if (name == "fig5") return run_fig5(config);
  if (name == "outage") return run_outage(config);
  throw Error(Errc::InvalidArgument, "unknown scenario " + name);
}

}  // namespace ssibridge::scenario
