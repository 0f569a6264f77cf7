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

#include "ssibridge/ledger/chain.hpp"

namespace ssibridge::ledger {

// credential digest -> event references, in block order. Two ways to own
// one: rebuild it yourself from chain data, or subscribe to a provider's
// live event feed. The subscription route is operationally simpler but
// inherits the provider's availability and honesty; the rebuild route trusts
// only the chain bytes.
class Index {
 public:
  Index() = default;

  // Full scan of the chain (the self-indexing route).
  static Index rebuild(const Chain& chain);
  // Live route: registers on the chain's event feed; events from this point
  // on are applied automatically. Indexes history first, so the result is
  // complete.
  static Index subscribed(Chain& chain);

  void apply(const LedgerEvent& event);
  std::vector<EventRef> lookup(const Digest& credential_digest) const;
  size_t size() const;

  bool operator==(const Index& other) const;

 private:
  struct Shared {
    std::map<std::string, std::vector<EventRef>> by_credential;
    mutable std::mutex mu;
  };
  std::shared_ptr<Shared> state_ = std::make_shared<Shared>();
};

// Resolves a reference against the chain: exactly one ProofVerified event in
// the referenced block with the referenced tx digest and credential digest.
std::optional<LedgerEvent> resolve_event(const Chain& chain,
                                         const EventRef& ref);

}  // namespace ssibridge::ledger
