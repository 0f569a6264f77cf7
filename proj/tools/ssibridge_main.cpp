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

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "ssibridge/error.hpp"
#include "ssibridge/federation/http.hpp"
#include "ssibridge/proof/transcript_backend.hpp"
#include "ssibridge/scenario.hpp"
#include "ssibridge/svc/client.hpp"
#include "ssibridge/svc/service.hpp"
#include "ssibridge/wallet/itwallet.hpp"
#include "ssibridge/wallet/relying_party.hpp"

namespace {

using namespace ssibridge;
namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  fs::path p(path);
  if (!p.parent_path().empty()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
  out << content;
}

json read_json(const std::string& path) {
  return json::parse(read_file(path));
}

std::string keydir() {
  if (const char* dir = std::getenv("SSIBRIDGE_KEYDIR")) return dir;
  return "keys";
}

// Shared CLI state. --json switches stdout to machine-readable output.
struct Output {
  bool as_json = false;
  void emit(const json& j, const std::string& human) const {
    if (as_json)
      std::cout << j.dump(2) << "\n";
    else
      std::cout << human << "\n";
  }
};

uint64_t now_arg(uint64_t now) {
  return now ? now : 1700000000ull;
}

// Default handle-file written by `fed up`, consumed by wallet commands.
constexpr char kFedHandleFile[] = "ssibridge-fed.json";

void cmd_fed_up(const Output& out, const std::string& topology_path,
                uint64_t seed, int port, uint64_t created_at,
                const std::string& handle_path) {
  fed::FederationTopology topology =
      topology_path.empty() ? fed::FederationTopology::default_demo()
                            : fed::FederationTopology::load(topology_path);
  fed::MockFederation federation(topology, seed, created_at);

  // Persist entity keys so `issuer issue` can sign as a federation entity.
  for (const auto& id : federation.entity_ids())
    save_key(keydir(), federation.entity_signing_key(id), true);

  fed::HttpFederationServer server(federation, port);
  json pins = json::object();
  for (const auto& [id, fp] : federation.pinned_cert_fingerprints())
    pins[id] = fp.hex();
  json handle{{"base_url", server.base_url()},
              {"anchor_id", federation.anchor_id()},
              {"anchor_key", federation.anchor_public_key().to_json(false)},
              {"pinned_cert_fingerprints", pins},
              {"created_at", created_at},
              {"seed", seed}};
  write_file(handle_path, handle.dump(2) + "\n");

  out.emit(json{{"ok", true},
                {"base_url", server.base_url()},
                {"handle_file", handle_path}},
           "federation serving at " + server.base_url() + " (handle: " +
               handle_path + "); Ctrl-C to stop");
  server.wait_until_stopped();
}

json load_fed_handle(const std::string& handle_path) {
  return read_json(handle_path.empty() ? kFedHandleFile : handle_path);
}

wallet::FederationContext fed_ctx_from_handle(
    const json& handle, fed::FederationTransport& transport) {
  wallet::FederationContext ctx;
  ctx.anchor_key = Jwk::from_json(handle.at("anchor_key"));
  for (auto it = handle.at("pinned_cert_fingerprints").begin();
       it != handle.at("pinned_cert_fingerprints").end(); ++it)
    ctx.pinned_cert_fingerprints[it.key()] =
        Digest::from_hex(it.value().get<std::string>());
  ctx.transport = &transport;
  return ctx;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ssibridge: attested re-issuance and offline verification of "
      "federation credentials"};
  app.require_subcommand(1);
  Output out;
  app.add_flag("--json", out.as_json, "machine-readable JSON output");

  int exit_code = 0;

  // ---- fed ----------------------------------------------------------
  auto* fed_cmd = app.add_subcommand("fed", "mock federation controls");
  fed_cmd->require_subcommand(1);
  {
    static std::string topology_path, handle_path = kFedHandleFile;
    static uint64_t seed = 7, created_at = 1700000000ull;
    static int port = 0;
    auto* up = fed_cmd->add_subcommand("up", "serve the mock federation");
    up->add_option("--topology", topology_path, "topology JSON file");
    up->add_option("--seed", seed, "deterministic key seed");
    up->add_option("--port", port, "port (0 = ephemeral)");
    up->add_option("--created-at", created_at, "statement issuance epoch");
    up->add_option("--handle", handle_path, "where to write the handle file");
    up->callback([&] {
      cmd_fed_up(out, topology_path, seed, port, created_at, handle_path);
    });

    static std::string base, entity, mark;
    auto resolve_base = []() -> std::string {
      if (!base.empty()) return base;
      return load_fed_handle("").at("base_url").get<std::string>();
    };

    auto* outage = fed_cmd->add_subcommand("outage", "take an entity down");
    outage->add_option("entity", entity)->required();
    outage->add_option("--base", base);
    outage->callback([&] {
      fed::admin_command(resolve_base(), "outage", json{{"entity", entity}});
      out.emit(json{{"ok", true}}, "outage injected for " + entity);
    });

    auto* restore = fed_cmd->add_subcommand("restore", "bring an entity back");
    restore->add_option("entity", entity)->required();
    restore->add_option("--base", base);
    restore->callback([&] {
      fed::admin_command(resolve_base(), "restore", json{{"entity", entity}});
      out.emit(json{{"ok", true}}, "restored " + entity);
    });

    auto* revoke = fed_cmd->add_subcommand("revoke", "revoke a trust mark");
    revoke->add_option("mark", mark)->required();
    revoke->add_option("--base", base);
    revoke->callback([&] {
      fed::admin_command(resolve_base(), "revoke", json{{"mark", mark}});
      out.emit(json{{"ok", true}}, "revoked " + mark);
    });

    auto* rotate = fed_cmd->add_subcommand("rotate", "rotate an entity's key");
    rotate->add_option("entity", entity)->required();
    rotate->add_option("--base", base);
    rotate->callback([&] {
      fed::admin_command(resolve_base(), "rotate", json{{"entity", entity}});
      out.emit(json{{"ok", true}}, "rotated key of " + entity);
    });
  }

  // ---- issuer -------------------------------------------------------
  {
    auto* issuer = app.add_subcommand("issuer", "QEAA provider operations");
    issuer->require_subcommand(1);
    static std::string key_path, subject = "did:example:holder";
    static std::string vct = "https://credentials.example/healthcare-card";
    static std::string claims_path, disclosable_path, out_path = "credential.txt";
    static std::string itwallet_store;
    static std::string itwallet_cred_id = "healthcare-card";
    static int64_t lifetime = 30ll * 24 * 3600;
    static uint64_t at = 0, salt_seed = 11;
    auto* issue = issuer->add_subcommand("issue", "issue an SD-JWT-VC");
    issue->add_option("--key", key_path, "issuer key JSON (private)")->required();
    issue->add_option("--subject", subject);
    issue->add_option("--vct", vct);
    issue->add_option("--claims", claims_path, "always-visible claims JSON file");
    issue->add_option("--disclosable", disclosable_path, "disclosable claims JSON file");
    issue->add_option("--lifetime", lifetime, "seconds of validity");
    issue->add_option("--at", at, "issuance unix time");
    issue->add_option("--salt-seed", salt_seed, "seed for disclosure salts");
    issue->add_option("--out", out_path, "credential output file");
    issue->add_option("--itwallet", itwallet_store,
                      "also store into this IT-Wallet state file");
    issue->add_option("--cred-id", itwallet_cred_id, "id inside the IT-Wallet");
    issue->callback([&] {
      Jwk key = load_key(key_path);
      json visible = claims_path.empty() ? json::object() : read_json(claims_path);
      json disclosable = disclosable_path.empty()
                             ? json{{"given_name", "Ada"},
                                    {"family_name", "Lovelace"}}
                             : read_json(disclosable_path);
      ManualClock clock(now_arg(at));
      Rng rng(salt_seed);
      SdJwtVc cred = issue_sd_jwt_vc(key, key.key_id.substr(0, key.key_id.find('#')),
                                     subject, visible, disclosable, vct,
                                     lifetime, clock, rng);
      write_file(out_path, cred.compact_form());
      if (!itwallet_store.empty()) {
        wallet::SimItWallet itw =
            fs::exists(itwallet_store)
                ? wallet::SimItWallet::from_json(read_json(itwallet_store))
                : wallet::SimItWallet(subject);
        itw.store_credential(itwallet_cred_id, cred);
        write_file(itwallet_store, itw.to_json().dump(2) + "\n");
      }
      out.emit(json{{"ok", true},
                    {"credential_file", out_path},
                    {"digest", credential_digest(cred.compact_form()).hex()}},
               "issued " + out_path);
    });
  }

  // ---- itwallet -----------------------------------------------------
  {
    auto* itw_cmd = app.add_subcommand("itwallet", "simulated IT-Wallet");
    itw_cmd->require_subcommand(1);
    static std::string store = "itwallet.json", cred_id, out_path, holder = "did:example:holder";

    auto* login = itw_cmd->add_subcommand("login", "open an eID session");
    login->add_option("--store", store);
    login->add_option("--holder", holder);
    login->callback([&] {
      wallet::SimItWallet itw =
          fs::exists(store)
              ? wallet::SimItWallet::from_json(read_json(store))
              : wallet::SimItWallet(holder);
      itw.login();
      write_file(store, itw.to_json().dump(2) + "\n");
      out.emit(json{{"ok", true}}, "eID session open in " + store);
    });

    auto* exp = itw_cmd->add_subcommand("export", "export a stored credential");
    exp->add_option("--store", store);
    exp->add_option("--id", cred_id)->required();
    exp->add_option("--out", out_path)->required();
    exp->callback([&] {
      wallet::SimItWallet itw =
          wallet::SimItWallet::from_json(read_json(store));
      SdJwtVc cred = itw.export_credential(cred_id);
      write_file(out_path, cred.compact_form());
      out.emit(json{{"ok", true}, {"credential_file", out_path}},
               "exported " + cred_id + " to " + out_path);
    });
  }

  // ---- wallet -------------------------------------------------------
  {
    auto* wal = app.add_subcommand("wallet", "SSI wallet flows");
    wal->require_subcommand(1);
    static std::string cred_path, cred_id = "healthcare-card";
    static std::string handle_path, attested_out = "attested.json";
    static std::string chain_path = "chain.jsonl", verifier_path = "verifier.json";
    static std::string package_out = "package.json";
    static std::string select;
    static uint64_t at = 0, wallet_seed = 21, platform_seed = 31;
    static int64_t window = wallet::kDefaultValidityWindowS;

    auto make_wallet = [&](uint64_t seed) {
      Rng rng(seed);
      return wallet::SsiWallet(generate_key("holder-wallet", rng),
                               "did:example:holder", window);
    };

    auto* attest = wal->add_subcommand(
        "attest", "verify + attest a credential (import, preflight, enclave, mint, publish-ready)");
    attest->add_option("--cred", cred_path, "compact SD-JWT-VC file")->required();
    attest->add_option("--fed-handle", handle_path, "federation handle file");
    attest->add_option("--at", at, "verification unix time");
    attest->add_option("--wallet-seed", wallet_seed);
    attest->add_option("--platform-seed", platform_seed);
    attest->add_option("--window", window, "validity window seconds");
    attest->add_option("--out", attested_out);
    attest->callback([&] {
      json handle = load_fed_handle(handle_path);
      fed::HttpFederationTransport transport(
          handle.at("base_url").get<std::string>());
      wallet::FederationContext fctx = fed_ctx_from_handle(handle, transport);
      enclave::Platform platform = enclave::new_platform(platform_seed);
      enclave::VerificationPolicy policy;
      policy.required_mark_types = {"federation-membership"};
      policy.max_clock_skew_s = 60;
      wallet::EnclaveContext ectx{&platform,
                                  enclave::default_verification_workload(policy),
                                  nullptr};
      ManualClock clock(now_arg(at ? at : handle.value("created_at", uint64_t{0}) + 10));
      wallet::SsiWallet w = make_wallet(wallet_seed);
      w.import_credential(cred_id, SdJwtVc::parse(read_file(cred_path)));
      AttestedCredential attested =
          w.create_attested_credential(cred_id, fctx, ectx, clock);
      const wallet::AttestedRecord& record = w.attested_record(cred_id);
      write_file(attested_out,
                 json{{"attested_jwt_vc", attested.jwt_vc.compact()},
                      {"quote", record.quote.to_json()},
                      {"transcript", record.transcript.to_json()},
                      {"platform_root_fingerprint",
                       platform.root_fingerprint().hex()}}
                     .dump(2) +
                     "\n");
      out.emit(json{{"ok", true},
                    {"attested_file", attested_out},
                    {"outcome", attested.outcome()}},
               "attested credential written to " + attested_out);
    });

    auto* publish = wal->add_subcommand("publish", "publish the proof on-chain");
    publish->add_option("--cred", cred_path)->required();
    publish->add_option("--fed-handle", handle_path);
    publish->add_option("--chain", chain_path);
    publish->add_option("--verifier-out", verifier_path,
                        "write contract + expectations here");
    publish->add_option("--at", at);
    publish->add_option("--wallet-seed", wallet_seed);
    publish->add_option("--platform-seed", platform_seed);
    publish->add_option("--window", window);
    publish->add_option("--package-out", package_out);
    publish->callback([&] {
      json handle = load_fed_handle(handle_path);
      fed::HttpFederationTransport transport(
          handle.at("base_url").get<std::string>());
      wallet::FederationContext fctx = fed_ctx_from_handle(handle, transport);
      enclave::Platform platform = enclave::new_platform(platform_seed);
      enclave::VerificationPolicy policy;
      policy.required_mark_types = {"federation-membership"};
      policy.max_clock_skew_s = 60;
      enclave::WorkloadDescriptor workload =
          enclave::default_verification_workload(policy);
      wallet::EnclaveContext ectx{&platform, workload, nullptr};
      uint64_t t0 = now_arg(at ? at : handle.value("created_at", uint64_t{0}) + 10);
      ManualClock clock(t0);
      wallet::SsiWallet w = make_wallet(wallet_seed);
      w.import_credential(cred_id, SdJwtVc::parse(read_file(cred_path)));
      w.create_attested_credential(cred_id, fctx, ectx, clock);

      ledger::Chain chain = fs::exists(chain_path)
                                ? ledger::Chain::load(chain_path)
                                : ledger::Chain(t0);
      ledger::VerifierContract contract = chain.deploy_verifier(
          "transcript-v1", {platform.root_fingerprint()},
          enclave::measure_workload(workload));
      ledger::EventRef ref = w.publish_proof(cred_id, chain, contract);
      chain.save(chain_path);
      write_file(verifier_path,
                 json{{"contract", contract.to_json()},
                      {"trusted_root_fingerprint", platform.root_fingerprint().hex()},
                      {"expected_measurement",
                       enclave::measure_workload(workload).hex()}}
                     .dump(2) +
                     "\n");
      wallet::PresentationPackage pkg = w.present_package(cred_id);
      write_file(package_out, pkg.to_json().dump(2) + "\n");
      out.emit(json{{"ok", true},
                    {"event_ref", ref.to_json()},
                    {"chain_file", chain_path},
                    {"package_file", package_out}},
               "proof published; package at " + package_out);
    });

    auto* present_cmd = wal->add_subcommand(
        "present", "rebuild a presentation package from a published one, selecting claims");
    present_cmd->add_option("--package", package_out, "existing package file")->required();
    present_cmd->add_option("--select", select,
                            "comma-separated claim names (default: all)");
    static std::string present_out = "package-presented.json";
    present_cmd->add_option("--out", present_out);
    present_cmd->callback([&] {
      wallet::PresentationPackage pkg =
          wallet::PresentationPackage::from_json(read_json(package_out));
      std::set<std::string> names;
      if (select.empty()) {
        auto all = pkg.original.disclosable_names();
        names.insert(all.begin(), all.end());
      } else {
        size_t pos = 0;
        while (pos != std::string::npos) {
          size_t comma = select.find(',', pos);
          names.insert(select.substr(pos, comma == std::string::npos
                                              ? comma
                                              : comma - pos));
          pos = comma == std::string::npos ? comma : comma + 1;
        }
      }
      pkg.original = present(pkg.original, names);
      write_file(present_out, pkg.to_json().dump(2) + "\n");
      out.emit(json{{"ok", true}, {"package_file", present_out}},
               "package with selected disclosures at " + present_out);
    });

    auto* import_cmd = wal->add_subcommand("import", "validate and echo a credential file");
    import_cmd->add_option("--cred", cred_path)->required();
    import_cmd->callback([&] {
      SdJwtVc cred = SdJwtVc::parse(read_file(cred_path));
      out.emit(json{{"ok", true},
                    {"digest", credential_digest(cred.compact_form()).hex()},
                    {"disclosable", cred.disclosable_names()}},
               "credential parses; digest " +
                   credential_digest(cred.compact_form()).hex());
    });
  }

  // ---- chain --------------------------------------------------------
  {
    auto* chain_cmd = app.add_subcommand("chain", "simulated ledger");
    chain_cmd->require_subcommand(1);
    static std::string chain_path = "chain.jsonl", digest_hex;

    auto* show = chain_cmd->add_subcommand("show", "chain summary");
    show->add_option("--chain", chain_path);
    show->callback([&] {
      ledger::Chain chain = ledger::Chain::load(chain_path);
      out.emit(json{{"height", chain.height()},
                    {"events", chain.get_events({}).size()}},
               "height " + std::to_string(chain.height()) + ", " +
                   std::to_string(chain.get_events({}).size()) + " events");
    });

    auto* events = chain_cmd->add_subcommand("events", "query events");
    events->add_option("--chain", chain_path);
    events->add_option("--credential-digest", digest_hex);
    events->callback([&] {
      ledger::Chain chain = ledger::Chain::load(chain_path);
      ledger::EventFilter filter;
      if (!digest_hex.empty())
        filter.credential_digest = Digest::from_hex(digest_hex);
      json arr = json::array();
      for (const auto& e : chain.get_events(filter)) arr.push_back(e.to_json());
      out.emit(arr, arr.dump(2));
    });

    auto* load = chain_cmd->add_subcommand("load", "validate a persisted chain");
    load->add_option("path", chain_path)->required();
    load->callback([&] {
      ledger::Chain chain = ledger::Chain::load(chain_path);
      ledger::Index idx = ledger::Index::rebuild(chain);
      out.emit(json{{"ok", true},
                    {"height", chain.height()},
                    {"indexed_events", idx.size()}},
               "chain intact: height " + std::to_string(chain.height()));
    });
  }

  // ---- svc ----------------------------------------------------------
  {
    auto* svc_cmd = app.add_subcommand("svc", "confidential verifier service");
    svc_cmd->require_subcommand(1);
    static std::string handle_path, chain_path = "chain.jsonl", base;
    static std::string cred_path, out_path = "service-result.json";
    static uint64_t platform_seed = 41, key_seed = 42, at = 0, nonce_seed = 0;
    static int port = 0;

    auto* serve = svc_cmd->add_subcommand("serve", "run the service");
    serve->add_option("--fed-handle", handle_path);
    serve->add_option("--chain", chain_path);
    serve->add_option("--port", port);
    serve->add_option("--platform-seed", platform_seed);
    serve->add_option("--key-seed", key_seed);
    serve->add_option("--at", at);
    serve->callback([&] {
      json handle = load_fed_handle(handle_path);
      const std::string fed_base = handle.at("base_url").get<std::string>();
      static ManualClock clock(now_arg(at ? at : handle.value("created_at", uint64_t{0}) + 10));

      enclave::VerificationPolicy policy;
      policy.required_mark_types = {"federation-membership"};
      policy.max_clock_skew_s = 60;
      svc::ServiceConfig config;
      config.platform_seed = platform_seed;
      config.key_seed = key_seed;
      config.workload = enclave::default_verification_workload(policy);

      static ledger::Chain chain = fs::exists(chain_path)
                                       ? ledger::Chain::load(chain_path)
                                       : ledger::Chain(clock.now());
      enclave::Platform platform = enclave::new_platform(platform_seed);
      ledger::VerifierContract contract = chain.deploy_verifier(
          "transcript-v1", {platform.root_fingerprint()},
          enclave::measure_workload(config.workload));

      Jwk anchor_key = Jwk::from_json(handle.at("anchor_key"));
      std::map<std::string, Digest> pins;
      for (auto it = handle.at("pinned_cert_fingerprints").begin();
           it != handle.at("pinned_cert_fingerprints").end(); ++it)
        pins[it.key()] = Digest::from_hex(it.value().get<std::string>());

      svc::VerifierService service(
          config, anchor_key, pins,
          [fed_base] {
            return std::make_unique<fed::HttpFederationTransport>(fed_base);
          },
          chain, contract, clock, port);
      write_file("ssibridge-svc.json",
                 json{{"base_url", service.base_url()},
                      {"descriptor", service.descriptor().to_json()},
                      {"platform_root_fingerprint",
                       service.platform().root_fingerprint().hex()},
                      {"chain", chain_path}}
                     .dump(2) +
                     "\n");
      out.emit(json{{"ok", true}, {"base_url", service.base_url()}},
               "service at " + service.base_url() +
                   " (handle: ssibridge-svc.json); Ctrl-C to stop");
      service.wait_until_stopped();
      chain.save(chain_path);
    });

    auto* attest = svc_cmd->add_subcommand("attest", "attest a running service");
    attest->add_option("--base", base)->required();
    attest->add_option("--nonce-seed", nonce_seed);
    attest->callback([&] {
      json svc_handle = read_json("ssibridge-svc.json");
      svc::ServiceDescriptor desc =
          svc::ServiceDescriptor::from_json(svc_handle.at("descriptor"));
      Digest root_fp = Digest::from_hex(
          svc_handle.at("platform_root_fingerprint").get<std::string>());
      Rng rng(nonce_seed ? nonce_seed : 1);
      Bytes nonce = rng.bytes(32);
      svc::ServiceHandle handle = svc::attest_service(
          base, desc.provider_public_key, desc.expected_measurement, root_fp,
          nonce);
      out.emit(json{{"ok", true},
                    {"measurement", handle.attestation().measurement.hex()}},
               "service attested; measurement " +
                   handle.attestation().measurement.hex());
    });

    auto* verify = svc_cmd->add_subcommand("verify", "verify a credential remotely");
    verify->add_option("--base", base)->required();
    verify->add_option("--cred", cred_path)->required();
    verify->add_option("--nonce-seed", nonce_seed);
    verify->add_option("--out", out_path);
    verify->callback([&] {
      json svc_handle = read_json("ssibridge-svc.json");
      svc::ServiceDescriptor desc =
          svc::ServiceDescriptor::from_json(svc_handle.at("descriptor"));
      Digest root_fp = Digest::from_hex(
          svc_handle.at("platform_root_fingerprint").get<std::string>());
      Rng rng(nonce_seed ? nonce_seed : 1);
      Bytes nonce = rng.bytes(32);
      svc::ServiceHandle handle = svc::attest_service(
          base, desc.provider_public_key, desc.expected_measurement, root_fp,
          nonce);
      SdJwtVc cred = SdJwtVc::parse(read_file(cred_path));
      svc::VerificationResponse response =
          svc::request_verification(handle, cred);
      wallet::PresentationPackage pkg;
      pkg.attested = response.attested;
      pkg.original = cred;
      pkg.event_ref = response.event_ref;
      write_file(out_path, pkg.to_json().dump(2) + "\n");
      out.emit(json{{"ok", true},
                    {"package_file", out_path},
                    {"verdict", response.verdict}},
               "remote verification done; package at " + out_path);
    });
  }

  // ---- rp -----------------------------------------------------------
  {
    auto* rp = app.add_subcommand("rp", "relying party");
    static std::string package_path, chain_path = "chain.jsonl";
    static std::string root_fp_hex, measurement_hex, verifier_path;
    static uint64_t at = 0;
    static bool allow_offchain = false;
    auto* verify = rp->add_subcommand("verify", "verify a presentation package offline");
    verify->add_option("--package", package_path)->required();
    verify->add_option("--chain", chain_path);
    verify->add_option("--root-fp", root_fp_hex, "trusted platform root fingerprint (hex)");
    verify->add_option("--measurement", measurement_hex, "expected workload measurement (hex)");
    verify->add_option("--verifier", verifier_path,
                       "verifier.json with root fingerprint + measurement");
    verify->add_option("--now", at, "verification unix time");
    verify->add_flag("--allow-offchain-only", allow_offchain,
                     "accept quote-only packages without a ledger event");
    verify->callback([&] {
      wallet::PresentationPackage pkg =
          wallet::PresentationPackage::from_json(read_json(package_path));
      if (!verifier_path.empty()) {
        json v = read_json(verifier_path);
        root_fp_hex = v.at("trusted_root_fingerprint").get<std::string>();
        measurement_hex = v.at("expected_measurement").get<std::string>();
      }
      if (root_fp_hex.empty() || measurement_hex.empty())
        throw Error(Errc::InvalidArgument,
                    "provide --verifier or both --root-fp and --measurement");
      ledger::Chain chain = ledger::Chain::load(chain_path);
      ManualClock clock(now_arg(at ? at : pkg.attested.verified_at() + 60));
      wallet::RpVerdict verdict = wallet::relying_party_verify(
          pkg, chain, {Digest::from_hex(root_fp_hex)},
          Digest::from_hex(measurement_hex), clock,
          {.allow_offchain_only = allow_offchain});
      out.emit(verdict.to_json(),
               std::string(verdict.accepted ? "ACCEPT" : "REJECT") + " (" +
                   std::string(rp_reason_name(verdict.reason)) + ") " +
                   verdict.detail);
      if (!verdict.accepted) exit_code = 3;
    });
  }

  // ---- scenario -----------------------------------------------------
  {
    auto* scen = app.add_subcommand("scenario", "end-to-end reproductions");
    static std::string name, outdir = ".", topology_path;
    static scenario::ScenarioConfig config;
    auto* run = scen->add_subcommand("run", "run a scenario");
    run->add_option("name", name, "fig3|fig4|fig5|outage")->required();
    run->add_option("--seed", config.seed);
    run->add_option("--outdir", outdir);
    run->add_option("--window", config.validity_window_s);
    run->add_option("--backend", config.backend_id);
    run->add_option("--topology", topology_path);
    run->add_option("--epoch", config.epoch);
    run->callback([&] {
      config.outdir = outdir;
      if (!topology_path.empty()) config.topology_path = topology_path;
      json summary = scenario::run_scenario(name, config);
      out.emit(summary, summary.dump(2));
      if (!summary.value("ok", false)) exit_code = 4;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cout << json{{"error", std::string(errc_name(e.code()))},
                      {"message", e.what()}}
                     .dump()
              << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cout << json{{"error", "Unhandled"}, {"message", e.what()}}.dump()
              << "\n";
    return 1;
  }
  return exit_code;
}
