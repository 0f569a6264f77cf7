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

#include <atomic>
#include <optional>
#include <string>

#include "ssibridge/federation/types.hpp"

namespace ssibridge::fed {

enum class TransportStatus { Ok, NotFound, Unreachable };

// Every reply carries the cert the endpoint presented with it, the
// application-level equivalent of the TLS server certificate. A "Silent"
// status response is an Ok reply with an empty body.
struct TransportReply {
  TransportStatus status = TransportStatus::Unreachable;
  std::string body;
  std::optional<EndpointCert> cert;
};

class FederationTransport {
 public:
  virtual ~FederationTransport() = default;
  virtual TransportReply fetch_entity_configuration(
      const std::string& entity_id) = 0;
  virtual TransportReply fetch_subordinate_statement(
      const std::string& superior_id, const std::string& subject_id) = 0;
  virtual TransportReply query_mark_status(const std::string& status_endpoint,
                                           const std::string& mark_id) = 0;
};

// Wrapper that counts calls. Used to assert the preflight-before-enclave
// ordering and the relying party's zero-federation-calls property.
class CountingTransport : public FederationTransport {
 public:
  explicit CountingTransport(FederationTransport& inner) : inner_(inner) {}

  TransportReply fetch_entity_configuration(const std::string& id) override {
    ++fetch_calls_;
    return inner_.fetch_entity_configuration(id);
  }
  TransportReply fetch_subordinate_statement(const std::string& sup,
                                             const std::string& sub) override {
    ++fetch_calls_;
    return inner_.fetch_subordinate_statement(sup, sub);
  }
  TransportReply query_mark_status(const std::string& endpoint,
                                   const std::string& mark_id) override {
    ++status_calls_;
    return inner_.query_mark_status(endpoint, mark_id);
  }

  uint64_t fetch_calls() const { return fetch_calls_; }
  uint64_t status_calls() const { return status_calls_; }
  uint64_t total_calls() const { return fetch_calls_ + status_calls_; }
  void reset() { fetch_calls_ = 0; status_calls_ = 0; }

 private:
  FederationTransport& inner_;
  std::atomic<uint64_t> fetch_calls_{0};
  std::atomic<uint64_t> status_calls_{0};
};

// Parses the owner id out of a "fed:<owner>/status" locator.
std::string status_endpoint_owner(const std::string& status_endpoint);

}  // namespace ssibridge::fed
