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

#include "ssibridge/enclave/run.hpp"

#include <algorithm>
#include <set>

#include "ssibridge/error.hpp"

namespace ssibridge::enclave {

json VerificationTranscript::to_json() const {
  json obs = json::array();
  for (const auto& o : endpoint_observations) {
    obs.push_back(json{{"endpoint", o.endpoint},
                       {"cert_fingerprint", o.cert_fingerprint.hex()},
                       {"request_digest", o.request_digest.hex()},
                       {"response_digest", o.response_digest.hex()},
                       {"observed_at", o.observed_at}});
  }
  return json{{"credential_digest", credential_digest.hex()},
              {"anchor_key_fingerprint", anchor_key_fingerprint.hex()},
              {"endpoint_observations", obs},
              {"chain_verdict", chain_verdict.to_json()},
              {"credential_result", credential_result},
              {"policy", policy.to_json()},
              {"started_at", started_at},
              {"finished_at", finished_at}};
}

VerificationTranscript VerificationTranscript::from_json(const json& j) {
  VerificationTranscript t;
  t.credential_digest =
      Digest::from_hex(j.at("credential_digest").get<std::string>());
  t.anchor_key_fingerprint =
      Digest::from_hex(j.at("anchor_key_fingerprint").get<std::string>());
  for (const auto& oj : j.at("endpoint_observations")) {
    EndpointObservation o;
    o.endpoint = oj.at("endpoint").get<std::string>();
    o.cert_fingerprint =
        Digest::from_hex(oj.at("cert_fingerprint").get<std::string>());
    o.request_digest =
        Digest::from_hex(oj.at("request_digest").get<std::string>());
    o.response_digest =
        Digest::from_hex(oj.at("response_digest").get<std::string>());
    o.observed_at = oj.at("observed_at").get<uint64_t>();
    t.endpoint_observations.push_back(std::move(o));
  }
  t.chain_verdict = fed::ChainVerdict::from_json(j.at("chain_verdict"));
  t.credential_result = j.at("credential_result").get<std::string>();
  t.policy = VerificationPolicy::from_json(j.at("policy"));
  t.started_at = j.at("started_at").get<uint64_t>();
  t.finished_at = j.at("finished_at").get<uint64_t>();
  return t;
}

Digest VerificationTranscript::digest() const {
  return sha256(to_json().dump());
}

namespace {

// Transport wrapper enforcing cert pinning and recording every contact.
// The pin table is the paper's "endpoints' certificates as inputs": any
// endpoint presenting a certificate other than the provisioned one - or
// none at all - aborts the run before a quote can exist.
class PinningTransport : public fed::FederationTransport {
 public:
  PinningTransport(fed::FederationTransport& inner,
                   const std::map<std::string, Digest>& pins,
                   const Clock& clock,
                   std::vector<EndpointObservation>& log)
      : inner_(inner), pins_(pins), clock_(clock), log_(log) {}

  fed::TransportReply fetch_entity_configuration(const std::string& id) override {
    auto r = inner_.fetch_entity_configuration(id);
    observe("ec/" + id, id, "GET ec/" + id, r);
    return r;
  }
  fed::TransportReply fetch_subordinate_statement(const std::string& sup,
                                                  const std::string& sub) override {
    auto r = inner_.fetch_subordinate_statement(sup, sub);
    observe("ss/" + sup + "/" + sub, sup, "GET ss/" + sup + "/" + sub, r);
    return r;
  }
  fed::TransportReply query_mark_status(const std::string& endpoint,
                                        const std::string& mark_id) override {
    auto r = inner_.query_mark_status(endpoint, mark_id);
    observe(endpoint + "#" + mark_id, fed::status_endpoint_owner(endpoint),
            "POST " + endpoint + " " + mark_id, r);
    return r;
  }

 private:
  void observe(const std::string& locator, const std::string& host_entity,
               const std::string& request, const fed::TransportReply& r) {
    EndpointObservation o;
    o.endpoint = locator;
    o.request_digest = sha256(request);
    o.response_digest = sha256(r.body);
    o.observed_at = clock_.now();
    if (r.status == fed::TransportStatus::Ok) {
      if (!r.cert)
        throw Error(Errc::TransportCompromised,
                    host_entity + " presented no endpoint certificate");
      o.cert_fingerprint = r.cert->fingerprint();
      auto pin = pins_.find(host_entity);
      if (pin == pins_.end())
        throw Error(Errc::TransportCompromised,
                    host_entity + " is not in the pinned certificate set");
      if (pin->second != o.cert_fingerprint)
        throw Error(Errc::TransportCompromised,
                    host_entity + " presented a certificate that does not match its pin");
    }
    log_.push_back(std::move(o));
  }

  fed::FederationTransport& inner_;
  const std::map<std::string, Digest>& pins_;
  const Clock& clock_;
  std::vector<EndpointObservation>& log_;
};

}  // namespace

AttestedRun run_attested_verification(
    const Platform& platform, const WorkloadDescriptor& workload,
    const SdJwtVc& credential, const Jwk& anchor_key,
    const std::map<std::string, Digest>& pinned_cert_fingerprints,
    fed::FederationTransport& transport, const Clock& clock) {
  const VerificationPolicy& policy = workload.policy;

  VerificationTranscript transcript;
  transcript.started_at = clock.now();
  transcript.policy = policy;
  transcript.anchor_key_fingerprint = anchor_key.fingerprint();
  transcript.credential_digest = credential_digest(credential.compact_form());

  PinningTransport pinned(transport, pinned_cert_fingerprints, clock,
                          transcript.endpoint_observations);

  // Statuses already checked outside the TEE are re-queried here so the
  // transcript is self-contained evidence of the attested run.
  bool chain_ok = false;
  std::vector<Jwk> issuer_keys;
  int chain_entities = 0;
  std::vector<fed::TrustMark> leaf_marks;
  const std::string issuer_id =
      credential.issuer_jwt.payload().value("iss", std::string());
  try {
    fed::TrustChain chain =
        resolve_trust_chain(issuer_id, pinned, policy.max_chain_depth);
    transcript.chain_verdict =
        verify_trust_chain(chain, anchor_key, pinned, clock);
    chain_ok = transcript.chain_verdict.valid;
    issuer_keys = chain.leaf().fields.jwks;
    leaf_marks = chain.leaf().fields.trust_marks;
    chain_entities = static_cast<int>(chain.entity_ids().size());
  } catch (const Error& e) {
    if (e.code() == Errc::TransportCompromised) throw;
    transcript.chain_verdict.valid = false;
    transcript.chain_verdict.reason = fed::ChainReason::ResolutionFailed;
    transcript.chain_verdict.offending_entity = issuer_id;
    transcript.chain_verdict.anchor_key_fingerprint = anchor_key.fingerprint();
  }

  // Credential check under the leaf's published keys.
  if (issuer_keys.empty()) {
    transcript.credential_result = "NoIssuerKeys";
  } else {
    try {
      verify_sd_jwt_vc(credential, issuer_keys, clock, policy.max_clock_skew_s);
      transcript.credential_result = "ok";
    } catch (const Error& e) {
      transcript.credential_result = std::string(errc_name(e.code()));
    }
  }

  // Policy gates beyond what the chain verdict already covers.
  bool policy_ok = true;
  if (chain_entities > policy.max_chain_depth) {
    policy_ok = false;
    transcript.credential_result = "PolicyChainTooDeep";
  }
  for (const auto& required : policy.required_mark_types) {
    bool found = std::any_of(
        leaf_marks.begin(), leaf_marks.end(),
        [&](const fed::TrustMark& m) { return m.mark_type == required; });
    if (!found) {
      policy_ok = false;
      transcript.credential_result = "PolicyMissingMarkType:" + required;
    }
  }

  transcript.finished_at = clock.now();

  PublicInputs inputs;
  inputs.credential_digest = transcript.credential_digest;
  inputs.anchor_key_fingerprint = transcript.anchor_key_fingerprint;
  std::set<Digest> fps;
  for (const auto& o : transcript.endpoint_observations)
    if (!o.cert_fingerprint.is_zero()) fps.insert(o.cert_fingerprint);
  inputs.endpoint_cert_fingerprints.assign(fps.begin(), fps.end());
  inputs.measurement = measure_workload(workload);
  inputs.policy_digest = policy.digest();
  inputs.verified_at = transcript.finished_at;
  inputs.outcome =
      (chain_ok && transcript.credential_result == "ok" && policy_ok) ? 1 : 0;

  Quote quote = make_quote(platform, inputs.measurement, inputs, clock.now());
  return AttestedRun{std::move(transcript), std::move(quote)};
}

}  // namespace ssibridge::enclave
