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

#include "ssibridge/federation/types.hpp"

#include "ssibridge/error.hpp"

namespace ssibridge::fed {

json EndpointCert::to_json() const {
  return json{{"entity_id", entity_id},
              {"key", public_key.to_json(false)},
              {"not_before", not_before},
              {"not_after", not_after}};
}

EndpointCert EndpointCert::from_json(const json& j) {
  EndpointCert c;
  c.entity_id = j.at("entity_id").get<std::string>();
  c.public_key = Jwk::from_json(j.at("key"));
  c.not_before = j.at("not_before").get<uint64_t>();
  c.not_after = j.at("not_after").get<uint64_t>();
  return c;
}

Digest EndpointCert::fingerprint() const {
  return sha256(to_json().dump());
}

TrustMark TrustMark::build(const Jwk& issuer_key, const std::string& mark_id,
                           const std::string& mark_type,
                           const std::string& issuer_id,
                           const std::string& owner_id,
                           const std::string& status_endpoint) {
  json payload{{"mark_id", mark_id},
               {"mark_type", mark_type},
               {"iss", issuer_id},
               {"sub", owner_id},
               {"status_endpoint", status_endpoint}};
  TrustMark m;
  m.mark_id = mark_id;
  m.mark_type = mark_type;
  m.issuer_id = issuer_id;
  m.owner_id = owner_id;
  m.status_endpoint = status_endpoint;
  m.token = SignedToken::sign(issuer_key, payload, "trust-mark");
  return m;
}

TrustMark TrustMark::parse(std::string_view compact) {
  SignedToken t = SignedToken::parse(compact);
  const json& p = t.payload();
  TrustMark m;
  m.mark_id = p.at("mark_id").get<std::string>();
  m.mark_type = p.at("mark_type").get<std::string>();
  m.issuer_id = p.at("iss").get<std::string>();
  m.owner_id = p.at("sub").get<std::string>();
  m.status_endpoint = p.at("status_endpoint").get<std::string>();
  m.token = std::move(t);
  return m;
}

EntityStatement build_entity_statement(const Jwk& signing_key,
                                       const EntityStatementFields& fields) {
  json jwks = json::array();
  for (const auto& k : fields.jwks) jwks.push_back(k.to_json(false));
  json marks = json::array();
  for (const auto& m : fields.trust_marks) marks.push_back(m.token.compact());

  json payload{{"iss", fields.issuer_id},
               {"sub", fields.subject_id},
               {"jwks", jwks},
               {"authority_hints", fields.authority_hints},
               {"trust_marks", marks},
               {"iat", fields.iat},
               {"exp", fields.exp}};
  if (!fields.trust_mark_issuers.empty())
    payload["trust_mark_issuers"] = fields.trust_mark_issuers;

  EntityStatement s;
  s.fields = fields;
  s.token = SignedToken::sign(signing_key, payload, "entity-statement");
  return s;
}

EntityStatement parse_entity_statement(std::string_view compact) {
  SignedToken t = SignedToken::parse(compact);
  const json& p = t.payload();
  EntityStatement s;
  s.fields.issuer_id = p.at("iss").get<std::string>();
  s.fields.subject_id = p.at("sub").get<std::string>();
  for (const auto& k : p.at("jwks")) s.fields.jwks.push_back(Jwk::from_json(k));
  for (const auto& h : p.at("authority_hints"))
    s.fields.authority_hints.push_back(h.get<std::string>());
  for (const auto& m : p.at("trust_marks"))
    s.fields.trust_marks.push_back(TrustMark::parse(m.get<std::string>()));
  if (p.contains("trust_mark_issuers"))
    s.fields.trust_mark_issuers =
        p.at("trust_mark_issuers")
            .get<std::map<std::string, std::vector<std::string>>>();
  s.fields.iat = p.at("iat").get<uint64_t>();
  s.fields.exp = p.at("exp").get<uint64_t>();
  s.token = std::move(t);
  return s;
}

std::vector<std::string> TrustChain::entity_ids() const {
  std::vector<std::string> ids;
  for (const auto& s : statements) {
    if (ids.empty() || ids.back() != s.fields.subject_id)
      ids.push_back(s.fields.subject_id);
  }
  return ids;
}

std::string_view mark_status_name(MarkStatus s) {
  switch (s) {
    case MarkStatus::Active: return "Active";
    case MarkStatus::Revoked: return "Revoked";
    case MarkStatus::Unreachable: return "Unreachable";
    case MarkStatus::Silent: return "Silent";
  }
  return "?";
}

std::string_view chain_reason_name(ChainReason r) {
  switch (r) {
    case ChainReason::None: return "None";
    case ChainReason::MalformedChain: return "MalformedChain";
    case ChainReason::AnchorMismatch: return "AnchorMismatch";
    case ChainReason::BadSignature: return "BadSignature";
    case ChainReason::StatementExpired: return "StatementExpired";
    case ChainReason::StatementNotYetValid: return "StatementNotYetValid";
    case ChainReason::MarkUnauthorized: return "MarkUnauthorized";
    case ChainReason::MarkSignatureInvalid: return "MarkSignatureInvalid";
    case ChainReason::MarkRevoked: return "MarkRevoked";
    case ChainReason::MarkSilent: return "MarkSilent";
    case ChainReason::MarkUnreachable: return "MarkUnreachable";
    case ChainReason::ResolutionFailed: return "ResolutionFailed";
  }
  return "?";
}

ChainReason chain_reason_from_name(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(ChainReason::ResolutionFailed); ++i) {
    auto r = static_cast<ChainReason>(i);
    if (chain_reason_name(r) == name) return r;
  }
  throw Error(Errc::InvalidArgument, "unknown chain reason: " + std::string(name));
}

namespace {

json status_to_json(const StatusResult& s) {
  json j{{"status", std::string(mark_status_name(s.status))},
         {"endpoint_cert_fingerprint", s.endpoint_cert_fingerprint.hex()},
         {"queried_at", s.queried_at}};
  if (s.raw_response) j["raw_response"] = *s.raw_response;
  return j;
}

StatusResult status_from_json(const json& j) {
  StatusResult s;
  std::string name = j.at("status").get<std::string>();
  if (name == "Active") s.status = MarkStatus::Active;
  else if (name == "Revoked") s.status = MarkStatus::Revoked;
  else if (name == "Silent") s.status = MarkStatus::Silent;
  else s.status = MarkStatus::Unreachable;
  s.endpoint_cert_fingerprint =
      Digest::from_hex(j.at("endpoint_cert_fingerprint").get<std::string>());
  s.queried_at = j.at("queried_at").get<uint64_t>();
  if (j.contains("raw_response"))
    s.raw_response = j.at("raw_response").get<std::string>();
  return s;
}

}  // namespace

json ChainVerdict::to_json() const {
  json entities = json::array();
  for (const auto& e : per_entity) {
    json marks = json::array();
    for (const auto& m : e.marks) {
      marks.push_back(json{{"mark_id", m.mark_id},
                           {"mark_type", m.mark_type},
                           {"authorized", m.authorized},
                           {"signature_ok", m.signature_ok},
                           {"status", status_to_json(m.status)}});
    }
    entities.push_back(json{{"entity_id", e.entity_id},
                            {"signature_ok", e.signature_ok},
                            {"time_ok", e.time_ok},
                            {"marks", marks}});
  }
  return json{{"valid", valid},
              {"reason", std::string(chain_reason_name(reason))},
              {"offending_entity", offending_entity},
              {"per_entity", entities},
              {"anchor_key_fingerprint", anchor_key_fingerprint.hex()}};
}

ChainVerdict ChainVerdict::from_json(const json& j) {
  ChainVerdict v;
  v.valid = j.at("valid").get<bool>();
  v.reason = chain_reason_from_name(j.at("reason").get<std::string>());
  v.offending_entity = j.at("offending_entity").get<std::string>();
  v.anchor_key_fingerprint =
      Digest::from_hex(j.at("anchor_key_fingerprint").get<std::string>());
  for (const auto& ej : j.at("per_entity")) {
    EntityResult e;
    e.entity_id = ej.at("entity_id").get<std::string>();
    e.signature_ok = ej.at("signature_ok").get<bool>();
    e.time_ok = ej.at("time_ok").get<bool>();
    for (const auto& mj : ej.at("marks")) {
      MarkCheck m;
      m.mark_id = mj.at("mark_id").get<std::string>();
      m.mark_type = mj.at("mark_type").get<std::string>();
      m.authorized = mj.at("authorized").get<bool>();
      m.signature_ok = mj.at("signature_ok").get<bool>();
      m.status = status_from_json(mj.at("status"));
      e.marks.push_back(std::move(m));
    }
    v.per_entity.push_back(std::move(e));
  }
  return v;
}

json ChainVerdict::summary() const {
  return json{{"valid", valid},
              {"reason", std::string(chain_reason_name(reason))},
              {"offending_entity", offending_entity}};
}

}  // namespace ssibridge::fed
