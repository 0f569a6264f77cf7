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

#include "ssibridge/federation/mock.hpp"

#include <fstream>
#include <mutex>

#include "ssibridge/error.hpp"

namespace ssibridge::fed {

namespace {
constexpr uint64_t kStatementLifetime = 30ull * 24 * 3600;  // 30 days
constexpr uint64_t kCertLifetime = 365ull * 24 * 3600;
constexpr char kMembershipMark[] = "federation-membership";
}  // namespace

FederationTopology FederationTopology::minimal() {
  FederationTopology t;
  t.entities = {
      {"anchor", "anchor", "", {}},
      {"qeaa-provider", "provider", "anchor", {kMembershipMark}},
      {"wallet-provider", "provider", "anchor", {kMembershipMark}},
  };
  return t;
}

FederationTopology FederationTopology::default_demo() {
  FederationTopology t;
  t.entities = {
      {"anchor", "anchor", "", {}},
      {"intermediate", "intermediate", "anchor", {kMembershipMark}},
      {"qeaa-provider", "provider", "intermediate", {kMembershipMark}},
      {"wallet-provider", "provider", "anchor", {kMembershipMark}},
  };
  return t;
}

json FederationTopology::to_json() const {
  json arr = json::array();
  for (const auto& e : entities) {
    arr.push_back(json{{"id", e.id},
                       {"role", e.role},
                       {"authority", e.authority},
                       {"marks", e.mark_types}});
  }
  return json{{"entities", arr}};
}

FederationTopology FederationTopology::from_json(const json& j) {
  FederationTopology t;
  for (const auto& ej : j.at("entities")) {
    TopologyEntity e;
    e.id = ej.at("id").get<std::string>();
    e.role = ej.at("role").get<std::string>();
    e.authority = ej.value("authority", std::string());
    if (ej.contains("marks"))
      e.mark_types = ej.at("marks").get<std::vector<std::string>>();
    t.entities.push_back(std::move(e));
  }
  return t;
}

FederationTopology FederationTopology::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot read topology " + path);
  return from_json(json::parse(in));
}

void FederationTopology::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write topology " + path);
  out << to_json().dump(2) << "\n";
}

const TopologyEntity* FederationTopology::find(const std::string& id) const {
  for (const auto& e : entities)
    if (e.id == id) return &e;
  return nullptr;
}

std::string FederationTopology::anchor_id() const {
  std::string found;
  for (const auto& e : entities) {
    if (e.role == "anchor") {
      if (!found.empty())
        throw Error(Errc::InvalidTopology, "multiple anchors");
      found = e.id;
    }
  }
  if (found.empty()) throw Error(Errc::InvalidTopology, "no anchor entity");
  return found;
}

struct MockFederation::EntityState {
  TopologyEntity config;
  Jwk signing_key;        // federation + issuance key, rotates in place
  int key_generation = 0;
  Jwk endpoint_key;       // key inside the provisioned EndpointCert
  EndpointCert own_cert;      // what deployments pin
  EndpointCert serving_cert;  // what the endpoint presents (swappable)
  bool outage = false;
  bool statement_expired = false;
  bool tampered_signature = false;
};

struct MockFederation::MarkState {
  std::string mark_id;
  std::string mark_type;
  std::string owner_id;
  enum { Active, Revoked, Silent } status = Active;
};

MockFederation::MockFederation(const FederationTopology& topology,
                               uint64_t seed, uint64_t created_at)
    : topology_(topology), created_at_(created_at) {
  anchor_id_ = topology.anchor_id();  // validates exactly one anchor
  Rng rng(seed);
  for (const auto& cfg : topology.entities) {
    if (cfg.role != "anchor" && !topology.find(cfg.authority))
      throw Error(Errc::InvalidTopology,
                  cfg.id + " names unknown authority " + cfg.authority);
    auto st = std::make_unique<EntityState>();
    st->config = cfg;
    st->signing_key = generate_key(cfg.id + "#fed-0", rng);
    st->endpoint_key = generate_key(cfg.id + "#tls-0", rng);
    st->own_cert = EndpointCert{cfg.id, st->endpoint_key.public_only(),
                                created_at, created_at + kCertLifetime};
    st->serving_cert = st->own_cert;
    for (const auto& type : cfg.mark_types) {
      auto mark = std::make_unique<MarkState>();
      mark->mark_id = "mark:" + cfg.id + ":" + type;
      mark->mark_type = type;
      mark->owner_id = cfg.id;
      marks_[mark->mark_id] = std::move(mark);
    }
    entities_[cfg.id] = std::move(st);
  }
}

MockFederation::~MockFederation() = default;

const MockFederation::EntityState& MockFederation::entity(
    const std::string& id) const {
  auto it = entities_.find(id);
  if (it == entities_.end()) throw Error(Errc::UnknownEntity, id);
  return *it->second;
}

MockFederation::EntityState& MockFederation::entity_mut(const std::string& id) {
  auto it = entities_.find(id);
  if (it == entities_.end()) throw Error(Errc::UnknownEntity, id);
  return *it->second;
}

std::vector<TrustMark> MockFederation::marks_of_locked(
    const EntityState& e) const {
  // Marks are issued by the anchor; re-signed on demand so anchor key
  // rotation stays consistent.
  std::vector<TrustMark> out;
  const EntityState& anchor = entity(anchor_id_);
  for (const auto& [id, mark] : marks_) {
    if (mark->owner_id != e.config.id) continue;
    out.push_back(TrustMark::build(anchor.signing_key, mark->mark_id,
                                   mark->mark_type, anchor_id_,
                                   mark->owner_id,
                                   "fed:" + mark->owner_id + "/status"));
  }
  return out;
}

EntityStatement MockFederation::build_configuration_locked(
    const EntityState& e) const {
  EntityStatementFields f;
  f.issuer_id = e.config.id;
  f.subject_id = e.config.id;
  f.jwks = {e.signing_key.public_only()};
  if (!e.config.authority.empty()) f.authority_hints = {e.config.authority};
  f.trust_marks = marks_of_locked(e);
  if (e.config.id == anchor_id_) {
    // The anchor authorizes itself as the sole trust-mark issuer for every
    // mark type present in the topology.
    for (const auto& [id, mark] : marks_)
      f.trust_mark_issuers[mark->mark_type] = {anchor_id_};
  }
  f.iat = e.statement_expired ? created_at_ - 2 * kStatementLifetime : created_at_;
  f.exp = f.iat + kStatementLifetime;
  return build_entity_statement(e.signing_key, f);
}

EntityStatement MockFederation::build_subordinate_locked(
    const EntityState& superior, const EntityState& subject) const {
  EntityStatementFields f;
  f.issuer_id = superior.config.id;
  f.subject_id = subject.config.id;
  f.jwks = {subject.signing_key.public_only()};
  f.trust_marks = marks_of_locked(subject);
  f.iat = superior.statement_expired ? created_at_ - 2 * kStatementLifetime
                                     : created_at_;
  f.exp = f.iat + kStatementLifetime;
  return build_entity_statement(superior.signing_key, f);
}

std::string MockFederation::maybe_tamper(const EntityState& issuer,
                                         const std::string& compact) const {
  if (!issuer.tampered_signature) return compact;
  // Corrupt the first character of the signature segment; that position is
  // pure data bits, so the result stays decodable and fails verification.
  std::string broken = compact;
  size_t sig_start = broken.rfind('.') + 1;
  broken[sig_start] = broken[sig_start] == 'A' ? 'B' : 'A';
  return broken;
}

TransportReply MockFederation::fetch_entity_configuration(
    const std::string& entity_id) const {
  std::shared_lock lock(mu_);
  auto it = entities_.find(entity_id);
  if (it == entities_.end()) return {TransportStatus::NotFound, "", {}};
  const EntityState& e = *it->second;
  if (e.outage) return {TransportStatus::Unreachable, "", {}};
  return {TransportStatus::Ok,
          maybe_tamper(e, build_configuration_locked(e).compact()),
          e.serving_cert};
}

TransportReply MockFederation::fetch_subordinate_statement(
    const std::string& superior_id, const std::string& subject_id) const {
  std::shared_lock lock(mu_);
  auto sup = entities_.find(superior_id);
  auto sub = entities_.find(subject_id);
  if (sup == entities_.end() || sub == entities_.end())
    return {TransportStatus::NotFound, "", {}};
  if (sub->second->config.authority != superior_id)
    return {TransportStatus::NotFound, "", {}};
  const EntityState& e = *sup->second;
  if (e.outage) return {TransportStatus::Unreachable, "", {}};
  return {TransportStatus::Ok,
          maybe_tamper(e, build_subordinate_locked(e, *sub->second).compact()),
          e.serving_cert};
}

TransportReply MockFederation::query_mark_status(const std::string& owner_id,
                                                 const std::string& mark_id) const {
  std::shared_lock lock(mu_);
  auto it = entities_.find(owner_id);
  if (it == entities_.end()) return {TransportStatus::NotFound, "", {}};
  const EntityState& e = *it->second;
  if (e.outage) return {TransportStatus::Unreachable, "", {}};
  auto mk = marks_.find(mark_id);
  if (mk == marks_.end() || mk->second->owner_id != owner_id)
    return {TransportStatus::NotFound, "", e.serving_cert};
  switch (mk->second->status) {
    case MarkState::Active:
      return {TransportStatus::Ok, json{{"active", true}}.dump(),
              e.serving_cert};
    case MarkState::Revoked:
      return {TransportStatus::Ok, json{{"active", false}}.dump(),
              e.serving_cert};
    case MarkState::Silent:
    default:
      return {TransportStatus::Ok, "", e.serving_cert};
  }
}

void MockFederation::inject_outage(const std::string& entity_id) {
  std::unique_lock lock(mu_);
  entity_mut(entity_id).outage = true;
}

void MockFederation::restore(const std::string& entity_id) {
  std::unique_lock lock(mu_);
  entity_mut(entity_id).outage = false;
}

void MockFederation::revoke_mark(const std::string& mark_id) {
  std::unique_lock lock(mu_);
  auto it = marks_.find(mark_id);
  if (it == marks_.end()) throw Error(Errc::UnknownMark, mark_id);
  it->second->status = MarkState::Revoked;
}

void MockFederation::reinstate_mark(const std::string& mark_id) {
  std::unique_lock lock(mu_);
  auto it = marks_.find(mark_id);
  if (it == marks_.end()) throw Error(Errc::UnknownMark, mark_id);
  it->second->status = MarkState::Active;
}

void MockFederation::set_mark_silent(const std::string& mark_id) {
  std::unique_lock lock(mu_);
  auto it = marks_.find(mark_id);
  if (it == marks_.end()) throw Error(Errc::UnknownMark, mark_id);
  it->second->status = MarkState::Silent;
}

void MockFederation::rotate_key(const std::string& entity_id) {
  std::unique_lock lock(mu_);
  EntityState& e = entity_mut(entity_id);
  e.key_generation += 1;
  // Derive the rotated key from the current one so rotation stays
  // deterministic for a seeded federation.
  Digest d = sha256(e.signing_key.public_material);
  uint64_t derived_seed = 0;
  for (int i = 0; i < 8; ++i) derived_seed = (derived_seed << 8) | d.bytes[i];
  derived_seed ^= static_cast<uint64_t>(e.key_generation);
  Rng derived(derived_seed);
  e.signing_key = generate_key(
      entity_id + "#fed-" + std::to_string(e.key_generation), derived);
}

void MockFederation::set_statement_expired(const std::string& entity_id,
                                           bool expired) {
  std::unique_lock lock(mu_);
  entity_mut(entity_id).statement_expired = expired;
}

void MockFederation::tamper_signature(const std::string& entity_id,
                                      bool tampered) {
  std::unique_lock lock(mu_);
  entity_mut(entity_id).tampered_signature = tampered;
}

void MockFederation::swap_endpoint_certs(const std::string& a,
                                         const std::string& b) {
  std::unique_lock lock(mu_);
  std::swap(entity_mut(a).serving_cert, entity_mut(b).serving_cert);
}

void MockFederation::inject_outage_all_mark_hosts() {
  std::unique_lock lock(mu_);
  for (auto& [id, mark] : marks_) entity_mut(mark->owner_id).outage = true;
}

Jwk MockFederation::anchor_public_key() const {
  std::shared_lock lock(mu_);
  return entity(anchor_id_).signing_key.public_only();
}

std::map<std::string, Digest> MockFederation::pinned_cert_fingerprints() const {
  std::shared_lock lock(mu_);
  std::map<std::string, Digest> out;
  // Pins reflect the cert each entity was provisioned with, regardless of
  // later fault injection.
  for (const auto& [id, e] : entities_) out[id] = e->own_cert.fingerprint();
  return out;
}

std::map<std::string, EndpointCert> MockFederation::endpoint_certs() const {
  std::shared_lock lock(mu_);
  std::map<std::string, EndpointCert> out;
  for (const auto& [id, e] : entities_) out[id] = e->serving_cert;
  return out;
}

Jwk MockFederation::entity_signing_key(const std::string& entity_id) const {
  std::shared_lock lock(mu_);
  return entity(entity_id).signing_key;
}

std::vector<std::string> MockFederation::entity_ids() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, e] : entities_) out.push_back(id);
  return out;
}

std::vector<std::string> MockFederation::mark_ids() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, m] : marks_) out.push_back(id);
  return out;
}

std::vector<std::string> MockFederation::mark_ids_of(
    const std::string& entity_id) const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, m] : marks_)
    if (m->owner_id == entity_id) out.push_back(id);
  return out;
}

std::string status_endpoint_owner(const std::string& status_endpoint) {
  constexpr std::string_view prefix = "fed:";
  if (status_endpoint.rfind(prefix, 0) != 0)
    throw Error(Errc::InvalidArgument,
                "bad status endpoint: " + status_endpoint);
  size_t slash = status_endpoint.find('/', prefix.size());
  return status_endpoint.substr(prefix.size(), slash - prefix.size());
}

}  // namespace ssibridge::fed
