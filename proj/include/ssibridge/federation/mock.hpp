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

#include <map>
#include <memory>
#include <shared_mutex>
#include <vector>

#include "ssibridge/federation/transport.hpp"

namespace ssibridge::fed {

struct TopologyEntity {
  std::string id;
  std::string role;       // "anchor" | "intermediate" | "provider"
  std::string authority;  // empty for the anchor
  std::vector<std::string> mark_types;
};

struct FederationTopology {
  std::vector<TopologyEntity> entities;

  // anchor <- {qeaa-provider, wallet-provider}, one mark each.
  static FederationTopology minimal();
  // anchor <- intermediate <- qeaa-provider, anchor <- wallet-provider.
  static FederationTopology default_demo();

  json to_json() const;
  static FederationTopology from_json(const json& j);
  static FederationTopology load(const std::string& path);
  void save(const std::string& path) const;

  const TopologyEntity* find(const std::string& id) const;
  std::string anchor_id() const;  // throws InvalidTopology unless exactly one
};

// In-process trust federation with fault injection. Serves entity
// configurations, subordinate statements and trust-mark status, and lets
// tests and the CLI break any of them on demand. Mutations serialize behind
// a writer lock; readers always observe a consistent state.
class MockFederation {
 public:
  MockFederation(const FederationTopology& topology, uint64_t seed,
                 uint64_t created_at);
  ~MockFederation();

  // Read side (what transports call). Statements are built on demand from
  // the current keys and fault flags.
  TransportReply fetch_entity_configuration(const std::string& entity_id) const;
  TransportReply fetch_subordinate_statement(const std::string& superior_id,
                                             const std::string& subject_id) const;
  TransportReply query_mark_status(const std::string& owner_id,
                                   const std::string& mark_id) const;

  // Fault injection.
  void inject_outage(const std::string& entity_id);
  void restore(const std::string& entity_id);
  void revoke_mark(const std::string& mark_id);
  void reinstate_mark(const std::string& mark_id);
  void set_mark_silent(const std::string& mark_id);
  void rotate_key(const std::string& entity_id);
  void set_statement_expired(const std::string& entity_id, bool expired);
  void tamper_signature(const std::string& entity_id, bool tampered);
  void swap_endpoint_certs(const std::string& a, const std::string& b);
  void inject_outage_all_mark_hosts();

  // Out-of-band material a deployment would pin.
  std::string anchor_id() const { return anchor_id_; }
  Jwk anchor_public_key() const;
  std::map<std::string, Digest> pinned_cert_fingerprints() const;
  std::map<std::string, EndpointCert> endpoint_certs() const;

  // Harness access: entity signing keys double as credential-issuing keys.
  Jwk entity_signing_key(const std::string& entity_id) const;
  std::vector<std::string> entity_ids() const;
  std::vector<std::string> mark_ids() const;
  std::vector<std::string> mark_ids_of(const std::string& entity_id) const;
  const FederationTopology& topology() const { return topology_; }
  uint64_t created_at() const { return created_at_; }

 private:
  struct EntityState;
  struct MarkState;

  const EntityState& entity(const std::string& id) const;
  EntityState& entity_mut(const std::string& id);
  EntityStatement build_configuration_locked(const EntityState& e) const;
  EntityStatement build_subordinate_locked(const EntityState& superior,
                                           const EntityState& subject) const;
  std::vector<TrustMark> marks_of_locked(const EntityState& e) const;
  std::string maybe_tamper(const EntityState& issuer,
                           const std::string& compact) const;

  FederationTopology topology_;
  std::string anchor_id_;
  uint64_t created_at_;
  std::map<std::string, std::unique_ptr<EntityState>> entities_;
  std::map<std::string, std::unique_ptr<MarkState>> marks_;
  mutable std::shared_mutex mu_;
};

// Direct transport over an in-process MockFederation.
class InProcessTransport : public FederationTransport {
 public:
  explicit InProcessTransport(const MockFederation& fed) : fed_(fed) {}

  TransportReply fetch_entity_configuration(const std::string& id) override {
    return fed_.fetch_entity_configuration(id);
  }
  TransportReply fetch_subordinate_statement(const std::string& sup,
                                             const std::string& sub) override {
    return fed_.fetch_subordinate_statement(sup, sub);
  }
  TransportReply query_mark_status(const std::string& endpoint,
                                   const std::string& mark_id) override {
    return fed_.query_mark_status(status_endpoint_owner(endpoint), mark_id);
  }

 private:
  const MockFederation& fed_;
};

}  // namespace ssibridge::fed
