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

#include "ssibridge/ledger/index.hpp"

namespace ssibridge::ledger {

Index Index::rebuild(const Chain& chain) {
  Index idx;
  for (const auto& event : chain.get_events({})) idx.apply(event);
  return idx;
}

Index Index::subscribed(Chain& chain) {
  Index idx;
  // The callback shares ownership of the map, so copies of this Index and
  // the subscription see the same state.
  auto state = idx.state_;
  chain.subscribe([state](const LedgerEvent& event) {
    std::lock_guard lock(state->mu);
    state->by_credential[event.credential_digest.hex()].push_back(
        EventRef{event.credential_digest, event.tx_digest, event.block_number});
  });
  for (const auto& event : chain.get_events({})) idx.apply(event);
  return idx;
}

void Index::apply(const LedgerEvent& event) {
  std::lock_guard lock(state_->mu);
  state_->by_credential[event.credential_digest.hex()].push_back(
      EventRef{event.credential_digest, event.tx_digest, event.block_number});
}

std::vector<EventRef> Index::lookup(const Digest& credential_digest) const {
  std::lock_guard lock(state_->mu);
  auto it = state_->by_credential.find(credential_digest.hex());
  if (it == state_->by_credential.end()) return {};
  return it->second;
}

size_t Index::size() const {
  std::lock_guard lock(state_->mu);
  size_t n = 0;
  for (const auto& [k, v] : state_->by_credential) n += v.size();
  return n;
}

bool Index::operator==(const Index& other) const {
  if (state_ == other.state_) return true;
  std::scoped_lock lock(state_->mu, other.state_->mu);
  return state_->by_credential == other.state_->by_credential;
}

std::optional<LedgerEvent> resolve_event(const Chain& chain,
                                         const EventRef& ref) {
  if (ref.block_number > chain.height()) return std::nullopt;
  Block block = chain.block(ref.block_number);
  std::optional<LedgerEvent> found;
  for (const auto& event : block.events) {
    if (event.tx_digest == ref.tx_digest &&
        event.credential_digest == ref.credential_digest &&
        event.name == "ProofVerified") {
      if (found) return std::nullopt;  // must match exactly one
      found = event;
    }
  }
  return found;
}

}  // namespace ssibridge::ledger
