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

#include "ssibridge/svc/client.hpp"

#include <algorithm>

#include "httplib.h"

#include "ssibridge/error.hpp"

namespace ssibridge::svc {

namespace {

json post_json(const std::string& base_url, const std::string& path,
               const json& body) {
  httplib::Client client(base_url);
  client.set_connection_timeout(2, 0);
  client.set_read_timeout(10, 0);
  auto res = client.Post(path, body.dump(), "application/json");
  if (!res) throw Error(Errc::Unreachable, base_url + path);
  json out = json::parse(res->body, nullptr, false);
  if (out.is_discarded())
    throw Error(Errc::Unreachable, "unparseable response from " + path);
  return out;
}

}  // namespace

ServiceHandle attest_service(const std::string& base_url,
                             const Jwk& provider_pubkey,
                             const Digest& expected_measurement,
                             const Digest& trusted_platform_root_fp,
                             BytesView nonce) {
  json reply = post_json(base_url, "/attest",
                         json{{"nonce_b64", b64url_encode(nonce)}});
  if (reply.contains("error"))
    throw Error(Errc::AttestationFailed, reply.dump());

  ServiceAttestation att;
  try {
    att = ServiceAttestation::from_json(reply);
  } catch (const Error& e) {
    throw Error(Errc::AttestationFailed, std::string("Malformed: ") + e.what());
  } catch (const json::exception& e) {
    throw Error(Errc::AttestationFailed, std::string("Malformed: ") + e.what());
  }

  // Freshness first: a replayed attestation is useless regardless of its
  // other merits.
  if (att.nonce.size() != nonce.size() ||
      !std::equal(nonce.begin(), nonce.end(), att.nonce.begin()))
    throw Error(Errc::AttestationFailed, "NonceMismatch");

  // Platform chain against the out-of-band root fingerprint.
  if (att.root_cert.fingerprint() != trusted_platform_root_fp)
    throw Error(Errc::AttestationFailed, "RootMismatch");
  if (!att.root_cert.verify_signed_by(att.root_cert.subject_key) ||
      !att.platform_cert.verify_signed_by(att.root_cert.subject_key) ||
      !verify_bytes(att.platform_cert.subject_key,
                    att.attestation_signed_bytes(), att.attestation_signature))
    throw Error(Errc::AttestationFailed, "BadSignature");

  // Workload identity.
  if (att.measurement != expected_measurement)
    throw Error(Errc::AttestationFailed, "MeasurementMismatch");

  // Binding of (measurement, provider key, nonce, timestamp) into the quote.
  if (att.provider_key_fingerprint != provider_pubkey.fingerprint())
    throw Error(Errc::AttestationFailed, "ProviderKeyMismatch");
  ServiceBindingInputs binding{att.measurement, att.provider_key_fingerprint,
                               att.nonce, att.timestamp};
  Digest bd = binding.digest();
  if (!std::equal(bd.bytes.begin(), bd.bytes.end(), att.report_data.begin()) ||
      !std::all_of(att.report_data.begin() + 32, att.report_data.end(),
                   [](uint8_t b) { return b == 0; }))
    throw Error(Errc::AttestationFailed, "BindingMismatch");

  // Provider countersignature.
  if (!verify_bytes(provider_pubkey, to_bytes(att.provider_signed_body()),
                    att.provider_signature))
    throw Error(Errc::AttestationFailed, "ProviderSignatureInvalid");

  return ServiceHandle(base_url, std::move(att));
}

VerificationResponse request_verification(const ServiceHandle& handle,
                                          const SdJwtVc& credential) {
  json reply = post_json(handle.base_url(), "/verify",
                         json{{"sd_jwt_vc_compact", credential.compact_form()}});
  if (reply.contains("error")) {
    const json& err = reply.at("error");
    std::string code = err.value("code", "Unreachable");
    std::string message = err.value("message", "");
    if (code == "PreflightFailed")
      throw Error(Errc::PreflightFailed, message);
    if (code == "ProofRejected") throw Error(Errc::ProofRejected, message);
    throw Error(Errc::Unreachable, code + ": " + message);
  }
  VerificationResponse out;
  out.attested = AttestedCredential::parse(
      reply.at("attested_jwt_vc").get<std::string>());
  out.event_ref = ledger::EventRef::from_json(reply.at("event_ref"));
  out.verdict = reply.at("verdict");
  return out;
}

ServiceDescriptor fetch_descriptor(const std::string& base_url) {
  httplib::Client client(base_url);
  client.set_connection_timeout(2, 0);
  auto res = client.Get("/descriptor");
  if (!res || res->status != 200)
    throw Error(Errc::Unreachable, base_url + "/descriptor");
  return ServiceDescriptor::from_json(json::parse(res->body));
}

}  // namespace ssibridge::svc
