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

#include "ssibridge/federation/http.hpp"

#include "httplib.h"

#include "ssibridge/error.hpp"

namespace ssibridge::fed {

namespace {

void attach_reply(httplib::Response& res, const TransportReply& reply) {
  if (reply.status == TransportStatus::Unreachable) {
    res.status = 503;
    res.set_header("X-Simulated-Outage", "1");
    return;
  }
  if (reply.cert) {
    res.set_header("X-Endpoint-Cert",
                   b64url_encode(to_bytes(reply.cert->to_json().dump())));
  }
  if (reply.status == TransportStatus::NotFound) {
    res.status = 404;
    return;
  }
  res.status = 200;
  res.set_content(reply.body, "application/json");
}

TransportReply parse_reply(const httplib::Result& result) {
  if (!result) return {TransportStatus::Unreachable, "", {}};
  TransportReply reply;
  if (result->has_header("X-Endpoint-Cert")) {
    try {
      reply.cert = EndpointCert::from_json(json::parse(
          to_string(b64url_decode(result->get_header_value("X-Endpoint-Cert")))));
    } catch (...) {
      reply.cert = std::nullopt;
    }
  }
  if (result->status == 503) return {TransportStatus::Unreachable, "", {}};
  if (result->status == 404)
    return {TransportStatus::NotFound, "", reply.cert};
  if (result->status != 200) return {TransportStatus::Unreachable, "", {}};
  reply.status = TransportStatus::Ok;
  reply.body = result->body;
  return reply;
}

}  // namespace

struct HttpFederationServer::Impl {
  httplib::Server server;
};

HttpFederationServer::HttpFederationServer(MockFederation& fed, int port)
    : impl_(std::make_unique<Impl>()), fed_(fed) {
  auto& svr = impl_->server;

  svr.Get(R"(/([^/]+)/\.well-known/federation)",
          [this](const httplib::Request& req, httplib::Response& res) {
            attach_reply(res, fed_.fetch_entity_configuration(req.matches[1]));
          });

  svr.Get(R"(/([^/]+)/fetch)",
          [this](const httplib::Request& req, httplib::Response& res) {
            if (!req.has_param("sub")) {
              res.status = 400;
              return;
            }
            attach_reply(res, fed_.fetch_subordinate_statement(
                                  req.matches[1], req.get_param_value("sub")));
          });

  svr.Post(R"(/([^/]+)/status)",
           [this](const httplib::Request& req, httplib::Response& res) {
             json body = json::parse(req.body, nullptr, false);
             if (body.is_discarded() || !body.contains("trust_mark_id")) {
               res.status = 400;
               return;
             }
             attach_reply(res, fed_.query_mark_status(
                                   req.matches[1],
                                   body.at("trust_mark_id").get<std::string>()));
           });

  svr.Post("/admin/command",
           [this](const httplib::Request& req, httplib::Response& res) {
             json body = json::parse(req.body, nullptr, false);
             if (body.is_discarded() || !body.contains("command")) {
               res.status = 400;
               res.set_content(json{{"error", "bad admin body"}}.dump(),
                               "application/json");
               return;
             }
             try {
               const std::string cmd = body.at("command").get<std::string>();
               auto arg = [&](const char* key) {
                 return body.at(key).get<std::string>();
               };
               if (cmd == "outage") fed_.inject_outage(arg("entity"));
               else if (cmd == "restore") fed_.restore(arg("entity"));
               else if (cmd == "revoke") fed_.revoke_mark(arg("mark"));
               else if (cmd == "reinstate") fed_.reinstate_mark(arg("mark"));
               else if (cmd == "silence") fed_.set_mark_silent(arg("mark"));
               else if (cmd == "rotate") fed_.rotate_key(arg("entity"));
               else if (cmd == "expire") fed_.set_statement_expired(arg("entity"), true);
               else if (cmd == "unexpire") fed_.set_statement_expired(arg("entity"), false);
               else if (cmd == "tamper") fed_.tamper_signature(arg("entity"), true);
               else if (cmd == "untamper") fed_.tamper_signature(arg("entity"), false);
               else if (cmd == "swap") fed_.swap_endpoint_certs(arg("a"), arg("b"));
               else if (cmd == "outage-all-mark-hosts") fed_.inject_outage_all_mark_hosts();
               else {
                 res.status = 400;
                 res.set_content(json{{"error", "unknown command " + cmd}}.dump(),
                                 "application/json");
                 return;
               }
               res.set_content(json{{"ok", true}}.dump(), "application/json");
             } catch (const Error& e) {
               res.status = 400;
               res.set_content(json{{"error", e.what()}}.dump(),
                               "application/json");
             }
           });

  svr.Get("/admin/handle",
          [this](const httplib::Request&, httplib::Response& res) {
            json pins = json::object();
            for (const auto& [id, fp] : fed_.pinned_cert_fingerprints())
              pins[id] = fp.hex();
            res.set_content(json{{"anchor_id", fed_.anchor_id()},
                                 {"anchor_key", fed_.anchor_public_key().to_json(false)},
                                 {"pinned_cert_fingerprints", pins},
                                 {"created_at", fed_.created_at()}}
                                .dump(),
                            "application/json");
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

HttpFederationServer::~HttpFederationServer() {
  stop();
}

void HttpFederationServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
  if (serving_thread_.joinable()) serving_thread_.join();
}

void HttpFederationServer::wait_until_stopped() {
  if (serving_thread_.joinable()) serving_thread_.join();
}

std::string HttpFederationServer::base_url() const {
  return "http://127.0.0.1:" + std::to_string(port_);
}

struct HttpFederationTransport::Impl {
  httplib::Client client;
  explicit Impl(const std::string& base) : client(base) {}
};

HttpFederationTransport::HttpFederationTransport(std::string base_url,
                                                 int timeout_ms)
    : impl_(std::make_unique<Impl>(base_url)) {
  impl_->client.set_connection_timeout(0, timeout_ms * 1000);
  impl_->client.set_read_timeout(0, timeout_ms * 1000);
  // No keep-alive: an idle held connection would stall server shutdown for
  // the full keep-alive timeout.
}

HttpFederationTransport::~HttpFederationTransport() = default;

TransportReply HttpFederationTransport::fetch_entity_configuration(
    const std::string& id) {
  return parse_reply(impl_->client.Get("/" + id + "/.well-known/federation"));
}

TransportReply HttpFederationTransport::fetch_subordinate_statement(
    const std::string& sup, const std::string& sub) {
  return parse_reply(impl_->client.Get("/" + sup + "/fetch?sub=" + sub));
}

TransportReply HttpFederationTransport::query_mark_status(
    const std::string& endpoint, const std::string& mark_id) {
  const std::string owner = status_endpoint_owner(endpoint);
  return parse_reply(impl_->client.Post(
      "/" + owner + "/status", json{{"trust_mark_id", mark_id}}.dump(),
      "application/json"));
}

RemoteFederationInfo fetch_federation_info(const std::string& base_url) {
  httplib::Client client(base_url);
  client.set_connection_timeout(2, 0);
  auto res = client.Get("/admin/handle");
  if (!res || res->status != 200)
    throw Error(Errc::Unreachable, "federation admin at " + base_url);
  json j = json::parse(res->body);
  RemoteFederationInfo info;
  info.anchor_id = j.at("anchor_id").get<std::string>();
  info.anchor_public_key = Jwk::from_json(j.at("anchor_key"));
  for (auto it = j.at("pinned_cert_fingerprints").begin();
       it != j.at("pinned_cert_fingerprints").end(); ++it)
    info.pinned_cert_fingerprints[it.key()] =
        Digest::from_hex(it.value().get<std::string>());
  info.created_at = j.at("created_at").get<uint64_t>();
  return info;
}

void admin_command(const std::string& base_url, const std::string& command,
                   const json& body) {
  httplib::Client client(base_url);
  client.set_connection_timeout(2, 0);
  json full = body;
  full["command"] = command;
  auto res = client.Post("/admin/command", full.dump(), "application/json");
  if (!res) throw Error(Errc::Unreachable, "federation admin at " + base_url);
  if (res->status != 200) {
    json j = json::parse(res->body, nullptr, false);
    throw Error(Errc::InvalidArgument,
                j.is_discarded() ? "admin command failed"
                                 : j.value("error", "admin command failed"));
  }
}

}  // namespace ssibridge::fed
