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

#include "ssibridge/svc/service.hpp"

#include "httplib.h"

#include "ssibridge/error.hpp"
#include "ssibridge/federation/verify.hpp"
#include "ssibridge/proof/transcript_backend.hpp"

namespace ssibridge::svc {

json ServiceDescriptor::to_json() const {
  return json{{"provider_public_key", provider_public_key.to_json(false)},
              {"service_workload", service_workload.to_json()},
              {"expected_measurement", expected_measurement.hex()},
              {"base_endpoint", base_endpoint}};
}

ServiceDescriptor ServiceDescriptor::from_json(const json& j) {
  ServiceDescriptor d;
  d.provider_public_key = Jwk::from_json(j.at("provider_public_key"));
  d.service_workload =
      enclave::WorkloadDescriptor::from_json(j.at("service_workload"));
  d.expected_measurement =
      Digest::from_hex(j.at("expected_measurement").get<std::string>());
  d.base_endpoint = j.at("base_endpoint").get<std::string>();
  return d;
}

namespace {
void put_field(Bytes& out, BytesView field) {
  put_u32be(out, static_cast<uint32_t>(field.size()));
  out.insert(out.end(), field.begin(), field.end());
}
}  // namespace

Bytes ServiceBindingInputs::encode() const {
  Bytes out;
  put_field(out, measurement.bytes);
  put_field(out, provider_key_fingerprint.bytes);
  put_field(out, nonce);
  Bytes ts;
  put_u64be(ts, timestamp);
  put_field(out, ts);
  return out;
}

Digest ServiceBindingInputs::digest() const {
  return sha256(encode());
}

Bytes ServiceAttestation::attestation_signed_bytes() const {
  Bytes msg;
  msg.insert(msg.end(), measurement.bytes.begin(), measurement.bytes.end());
  msg.insert(msg.end(), report_data.begin(), report_data.end());
  put_u64be(msg, timestamp);
  return msg;
}

std::string ServiceAttestation::provider_signed_body() const {
  return json{{"measurement", measurement.hex()},
              {"report_data", b64url_encode(report_data)},
              {"timestamp", timestamp},
              {"attestation_signature", b64url_encode(attestation_signature)},
              {"platform_cert", platform_cert.to_json()},
              {"root_cert", root_cert.to_json()},
              {"provider_key_fingerprint", provider_key_fingerprint.hex()},
              {"nonce", b64url_encode(nonce)}}
      .dump();
}

json ServiceAttestation::to_json() const {
  json j = json::parse(provider_signed_body());
  j["provider_signature"] = b64url_encode(provider_signature);
  return j;
}

ServiceAttestation ServiceAttestation::from_json(const json& j) {
  ServiceAttestation a;
  a.measurement = Digest::from_hex(j.at("measurement").get<std::string>());
  Bytes rd = b64url_decode(j.at("report_data").get<std::string>());
  if (rd.size() != 64)
    throw Error(Errc::MalformedEncoding, "report_data must be 64 bytes");
  std::copy(rd.begin(), rd.end(), a.report_data.begin());
  a.timestamp = j.at("timestamp").get<uint64_t>();
  a.attestation_signature =
      b64url_decode(j.at("attestation_signature").get<std::string>());
  a.platform_cert = enclave::Cert::from_json(j.at("platform_cert"));
  a.root_cert = enclave::Cert::from_json(j.at("root_cert"));
  a.provider_key_fingerprint =
      Digest::from_hex(j.at("provider_key_fingerprint").get<std::string>());
  a.nonce = b64url_decode(j.at("nonce").get<std::string>());
  a.provider_signature =
      b64url_decode(j.at("provider_signature").get<std::string>());
  return a;
}

struct VerifierService::Impl {
  httplib::Server server;
};

VerifierService::VerifierService(ServiceConfig config, Jwk anchor_key,
                                 std::map<std::string, Digest> pins,
                                 TransportFactory transport_factory,
                                 ledger::Chain& chain,
                                 ledger::VerifierContract contract,
                                 const Clock& clock, int port)
    : config_(std::move(config)),
      platform_(enclave::new_platform(config_.platform_seed)),
      anchor_key_(std::move(anchor_key)),
      pins_(std::move(pins)),
      transport_factory_(std::move(transport_factory)),
      chain_(chain),
      contract_(std::move(contract)),
      clock_(clock),
      impl_(std::make_unique<Impl>()) {
  Rng rng(config_.key_seed);
  provider_key_ = generate_key(config_.provider_id + "#provider", rng);

  auto& svr = impl_->server;

  svr.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(json{{"ok", true}}.dump(), "application/json");
  });

  svr.Get("/descriptor", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(descriptor().to_json().dump(), "application/json");
  });

  svr.Post("/attest", [this](const httplib::Request& req, httplib::Response& res) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.contains("nonce_b64")) {
      res.status = 400;
      res.set_content(json{{"error", "expected {nonce_b64}"}}.dump(),
                      "application/json");
      return;
    }
    ServiceAttestation att;
    att.measurement = enclave::measure_workload(config_.workload);
    att.timestamp = clock_.now();
    att.platform_cert = platform_.platform_cert();
    att.root_cert = platform_.root_cert();
    att.provider_key_fingerprint = provider_key_.fingerprint();
    att.nonce = b64url_decode(body.at("nonce_b64").get<std::string>());

    ServiceBindingInputs binding{att.measurement, att.provider_key_fingerprint,
                                 att.nonce, att.timestamp};
    Digest bd = binding.digest();
    std::copy(bd.bytes.begin(), bd.bytes.end(), att.report_data.begin());
    att.attestation_signature =
        platform_.attestation_sign(att.attestation_signed_bytes());
    att.provider_signature =
        sign_bytes(provider_key_, to_bytes(att.provider_signed_body()));
    res.set_content(att.to_json().dump(), "application/json");
  });

  svr.Post("/verify", [this](const httplib::Request& req, httplib::Response& res) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.contains("sd_jwt_vc_compact")) {
      res.status = 400;
      res.set_content(json{{"error", {{"code", "InvalidArgument"},
                                      {"message", "expected {sd_jwt_vc_compact}"}}}}
                          .dump(),
                      "application/json");
      return;
    }
    json out = handle_verify(body.at("sd_jwt_vc_compact").get<std::string>());
    if (out.contains("error")) res.status = 422;
    res.set_content(out.dump(), "application/json");
  });

  svr.Get("/events", [this](const httplib::Request& req, httplib::Response& res) {
    ledger::EventFilter filter;
    if (req.has_param("credential_digest")) {
      try {
        filter.credential_digest =
            Digest::from_hex(req.get_param_value("credential_digest"));
      } catch (const Error&) {
        res.status = 400;
        res.set_content(json{{"error", "bad credential_digest"}}.dump(),
                        "application/json");
        return;
      }
    }
    json arr = json::array();
    for (const auto& e : chain_.get_events(filter)) arr.push_back(e.to_json());
    res.set_content(arr.dump(), "application/json");
  });

  if (port == 0) {
    port_ = svr.bind_to_any_port("127.0.0.1");
  } else {
    svr.bind_to_port("127.0.0.1", port);
    port_ = port;
  }
  serving_thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  svr.wait_until_ready();
}

json VerifierService::handle_verify(const std::string& compact_credential) {
  // Everything below lives in this frame; nothing credential-derived
  // outlives the response.
  try {
    SdJwtVc cred = SdJwtVc::parse(compact_credential);
    auto transport = transport_factory_();

    // Preflight outside the enclave, mirroring the local wallet flow.
    const std::string issuer_id =
        cred.issuer_jwt.payload().value("iss", std::string());
    fed::TrustChain chain_of_trust = resolve_trust_chain(
        issuer_id, *transport, config_.workload.policy.max_chain_depth);
    fed::ChainVerdict preflight =
        verify_trust_chain(chain_of_trust, anchor_key_, *transport, clock_);
    if (!preflight.valid)
      return json{{"error",
                   {{"code", "PreflightFailed"},
                    {"message", preflight.summary().dump()}}}};
    verify_sd_jwt_vc(cred, chain_of_trust.leaf().fields.jwks, clock_,
                     config_.workload.policy.max_clock_skew_s);

    enclave::AttestedRun run = enclave::run_attested_verification(
        platform_, config_.workload, cred, anchor_key_, pins_, *transport,
        clock_);

    AttestedCredential attested = issue_attested_jwt_vc(
        provider_key_, config_.provider_id, cred, run.quote, preflight,
        config_.validity_window_s, clock_);

    proof::ProofStatement statement = proof::statement_from_quote(run.quote);
    const proof::ProofBackend& backend =
        proof::BackendRegistry::instance().get(contract_.backend_id);
    proof::Proof proof_value =
        backend.prove(statement, proof::Witness{run.quote, run.transcript});
    ledger::TxReceipt receipt =
        chain_.submit_proof_tx(contract_, statement, proof_value);
    if (!receipt.success)
      return json{{"error",
                   {{"code", "ProofRejected"},
                    {"message", "contract rejected the submission"}}}};

    ledger::EventRef ref{statement.credential_digest, receipt.tx_digest,
                         receipt.block_number};
    return json{{"attested_jwt_vc", attested.jwt_vc.compact()},
                {"event_ref", ref.to_json()},
                {"verdict", preflight.summary()}};
  } catch (const Error& e) {
    return json{{"error", {{"code", std::string(errc_name(e.code()))},
                           {"message", e.what()}}}};
  } catch (const json::exception& e) {
    return json{{"error", {{"code", "MalformedToken"}, {"message", e.what()}}}};
  }
}

VerifierService::~VerifierService() {
  stop();
}

void VerifierService::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
  if (serving_thread_.joinable()) serving_thread_.join();
}

void VerifierService::wait_until_stopped() {
  if (serving_thread_.joinable()) serving_thread_.join();
}

std::string VerifierService::base_url() const {
  return "http://127.0.0.1:" + std::to_string(port_);
}

ServiceDescriptor VerifierService::descriptor() const {
  ServiceDescriptor d;
  d.provider_public_key = provider_key_.public_only();
  d.service_workload = config_.workload;
  d.expected_measurement = enclave::measure_workload(config_.workload);
  d.base_endpoint = base_url();
  return d;
}

json VerifierService::state_dump() const {
  // The complete retained state of the service process: configuration,
  // platform public material, contract parameters, and the shared chain.
  return json{{"descriptor", descriptor().to_json()},
              {"platform", platform_.to_json()},
              {"contract", contract_.to_json()},
              {"pins", [this] {
                 json pins = json::object();
                 for (const auto& [id, fp] : pins_) pins[id] = fp.hex();
                 return pins;
               }()},
              {"chain_jsonl", chain_.serialize_jsonl()}};
}

bool VerifierService::retains_bytes(std::string_view needle) const {
  return state_dump().dump().find(needle) != std::string::npos;
}

}  // namespace ssibridge::svc
