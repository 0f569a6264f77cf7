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

#include "ssibridge/proof/backend.hpp"

#include <map>
#include <mutex>

#include "ssibridge/error.hpp"
#include "ssibridge/proof/transcript_backend.hpp"

namespace ssibridge::proof {

json Proof::to_json() const {
  return json{{"backend_id", backend_id}, {"payload_b64", b64url_encode(payload)}};
}

Proof Proof::from_json(const json& j) {
  Proof p;
  p.backend_id = j.at("backend_id").get<std::string>();
  p.payload = b64url_decode(j.at("payload_b64").get<std::string>());
  return p;
}

struct BackendRegistry::Impl {
  mutable std::mutex mu;
  std::map<std::string, std::shared_ptr<ProofBackend>, std::less<>> backends;
};

BackendRegistry::BackendRegistry() : impl_(std::make_shared<Impl>()) {
  add(std::make_shared<TranscriptBackend>());
}

BackendRegistry& BackendRegistry::instance() {
  static BackendRegistry reg;
  return reg;
}

void BackendRegistry::add(std::shared_ptr<ProofBackend> backend) {
  if (backend->zero_knowledge()) {
    auto self_test = backend->zk_self_test();
    if (!self_test)
      throw Error(Errc::BackendRejected,
                  backend->backend_id() +
                      " claims zero-knowledge without a witness-"
                      "indistinguishability self-test");
    if (!self_test())
      throw Error(Errc::BackendRejected,
                  backend->backend_id() + " failed its zero-knowledge self-test");
  }
  std::lock_guard lock(impl_->mu);
  impl_->backends[backend->backend_id()] = std::move(backend);
}

const ProofBackend& BackendRegistry::get(std::string_view backend_id) const {
  std::lock_guard lock(impl_->mu);
  auto it = impl_->backends.find(backend_id);
  if (it == impl_->backends.end())
    throw Error(Errc::UnknownBackend, std::string(backend_id));
  return *it->second;
}

bool BackendRegistry::has(std::string_view backend_id) const {
  std::lock_guard lock(impl_->mu);
  return impl_->backends.contains(backend_id);
}

bool verify_proof(const std::string& backend_id, const ProofStatement& s,
                  const Proof& p, const std::vector<Digest>& trusted_roots,
                  const BackendRegistry& registry) {
  return registry.get(backend_id).verify(s, p, trusted_roots);
}

}  // namespace ssibridge::proof
