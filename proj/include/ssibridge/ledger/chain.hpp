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

#include <functional>
#include <memory>
#include <mutex>
#include <optional>

#include "ssibridge/proof/backend.hpp"

namespace ssibridge::ledger {

// Verifier-contract emulation. Parameters are frozen at deployment; the
// contract keeps no mutable storage — results live only in event logs, the
// cheap-permanence pattern the design relies on.
struct VerifierContract {
  std::string address;  // "0x" + first 20 bytes of the deployment digest, hex
  std::string backend_id;
  std::vector<Digest> trusted_roots;
  Digest expected_measurement;

  json to_json() const;
  static VerifierContract from_json(const json& j);
};

struct LedgerEvent {
  std::string contract_address;
  std::string name = "ProofVerified";
  Digest credential_digest;
  Digest statement_digest;
  uint8_t outcome = 0;
  Digest tx_digest;
  uint64_t block_number = 0;

  json to_json() const;
  static LedgerEvent from_json(const json& j);
};

struct EventRef {
  Digest credential_digest;
  Digest tx_digest;
  uint64_t block_number = 0;

  json to_json() const;
  static EventRef from_json(const json& j);
  bool operator==(const EventRef&) const = default;
};

struct Transaction {
  std::string kind;  // "deploy" | "submit"
  json body;
  Digest tx_digest;  // SHA-256 of {kind, body, block_number}
};

struct Block {
  uint64_t number = 0;
  Digest parent_digest;
  uint64_t timestamp = 0;
  std::vector<Transaction> txs;
  std::vector<LedgerEvent> events;

  json content_json() const;  // everything but the block digest
  Digest digest() const;
  json to_json() const;
  static Block from_json(const json& j);
};

struct TxReceipt {
  bool success = false;
  Digest tx_digest;
  uint64_t block_number = 0;
};

struct EventFilter {
  std::optional<std::string> contract;
  std::optional<Digest> credential_digest;
  uint64_t from_block = 0;
};

// Append-only simulated chain: one transaction per block, no consensus.
// Block timestamps are genesis_timestamp + block_number, so a seeded run
// serializes identically every time. Writes serialize behind a mutex;
// reads snapshot under the same lock.
class Chain {
 public:
  explicit Chain(uint64_t genesis_timestamp,
                 const proof::BackendRegistry* registry = nullptr);

  uint64_t height() const;  // number of the latest block
  Block block(uint64_t number) const;
  uint64_t genesis_timestamp() const { return genesis_timestamp_; }

  VerifierContract deploy_verifier(const std::string& backend_id,
                                   const std::vector<Digest>& trusted_roots,
                                   const Digest& expected_measurement);
  const VerifierContract& contract(const std::string& address) const;

  TxReceipt submit_proof_tx(const VerifierContract& contract,
                            const proof::ProofStatement& statement,
                            const proof::Proof& proof);

  std::vector<LedgerEvent> get_events(const EventFilter& filter) const;

  // Event subscription (what a live indexer hangs off). Subscribers are
  // invoked inside the writer lock, in emission order.
  using EventCallback = std::function<void(const LedgerEvent&)>;
  void subscribe(EventCallback cb);

  // JSON-lines persistence, one block per line. Loading re-plays deploy
  // transactions to rebuild the contract table and validates the digest
  // chain; any byte flip surfaces as BrokenChain.
  void save(const std::string& path) const;
  static Chain load(const std::string& path,
                    const proof::BackendRegistry* registry = nullptr);
  std::string serialize_jsonl() const;
  static Chain parse_jsonl(const std::string& text,
                           const proof::BackendRegistry* registry = nullptr);

 private:
  Block& append_block_locked();

  uint64_t genesis_timestamp_;
  const proof::BackendRegistry* registry_;
  std::vector<Block> blocks_;
  std::map<std::string, VerifierContract> contracts_;
  std::vector<EventCallback> subscribers_;
  // Held behind a pointer so Chain stays movable (load/parse return by value).
  mutable std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
};

}  // namespace ssibridge::ledger
