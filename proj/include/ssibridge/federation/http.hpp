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

#include <memory>
#include <thread>

#include "ssibridge/federation/mock.hpp"

namespace ssibridge::fed {

// Serves a MockFederation over local HTTP. One host stands in for every
// federation entity, with the entity id as the first path segment:
//
//   GET  /{entity}/.well-known/federation        compact entity configuration
//   GET  /{entity}/fetch?sub={subject}           compact subordinate statement
//   POST /{entity}/status  {"trust_mark_id"}     {"active": bool} or empty body
//
// Responses carry the presented endpoint certificate in the
// X-Endpoint-Cert header (base64url JSON) — the plain-HTTP stand-in for the
// TLS server certificate. An injected outage maps to 503 with
// X-Simulated-Outage: 1, which the client transport reports as Unreachable.
//
// Harness controls (not part of the federation surface) live under /admin:
//   POST /admin/{outage|restore|revoke|reinstate|silence|rotate|expire|
//                unexpire|tamper|untamper|swap}
// plus GET /admin/pinned, /admin/anchor, /admin/entities, /admin/handle.
class HttpFederationServer {
 public:
  // Binds to 127.0.0.1; port 0 picks a free port.
  HttpFederationServer(MockFederation& fed, int port = 0);
  ~HttpFederationServer();

  HttpFederationServer(const HttpFederationServer&) = delete;
  HttpFederationServer& operator=(const HttpFederationServer&) = delete;

  int port() const { return port_; }
  std::string base_url() const;
  void stop();
  void wait_until_stopped();  // blocks until stop() is called elsewhere

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  MockFederation& fed_;
  int port_ = 0;
  std::thread serving_thread_;
};

// Client-side transport speaking the wire format above.
class HttpFederationTransport : public FederationTransport {
 public:
  explicit HttpFederationTransport(std::string base_url,
                                   int timeout_ms = 2000);
  ~HttpFederationTransport() override;

  TransportReply fetch_entity_configuration(const std::string& id) override;
  TransportReply fetch_subordinate_statement(const std::string& sup,
                                             const std::string& sub) override;
  TransportReply query_mark_status(const std::string& endpoint,
                                   const std::string& mark_id) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Remote handle mirroring the fault-injection API by calling /admin routes.
struct RemoteFederationInfo {
  std::string anchor_id;
  Jwk anchor_public_key;
  std::map<std::string, Digest> pinned_cert_fingerprints;
  uint64_t created_at = 0;
};
RemoteFederationInfo fetch_federation_info(const std::string& base_url);
// Throws Unreachable / InvalidArgument on failure.
void admin_command(const std::string& base_url, const std::string& command,
                   const json& body);

}  // namespace ssibridge::fed
