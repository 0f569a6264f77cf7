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

#include "ssibridge/ledger/chain.hpp"

#include <fstream>
#include <sstream>

#include "ssibridge/error.hpp"

namespace ssibridge::ledger {

json VerifierContract::to_json() const {
  json roots = json::array();
  for (const auto& r : trusted_roots) roots.push_back(r.hex());
  return json{{"address", address},
              {"backend_id", backend_id},
              {"trusted_roots", roots},
              {"expected_measurement", expected_measurement.hex()}};
}

VerifierContract VerifierContract::from_json(const json& j) {
  VerifierContract c;
  c.address = j.at("address").get<std::string>();
  c.backend_id = j.at("backend_id").get<std::string>();
  for (const auto& r : j.at("trusted_roots"))
    c.trusted_roots.push_back(Digest::from_hex(r.get<std::string>()));
  c.expected_measurement =
      Digest::from_hex(j.at("expected_measurement").get<std::string>());
  return c;
}

json LedgerEvent::to_json() const {
  return json{{"contract_address", contract_address},
              {"name", name},
              {"credential_digest", credential_digest.hex()},
              {"statement_digest", statement_digest.hex()},
              {"outcome", outcome},
              {"tx_digest", tx_digest.hex()},
              {"block_number", block_number}};
}

LedgerEvent LedgerEvent::from_json(const json& j) {
  LedgerEvent e;
  e.contract_address = j.at("contract_address").get<std::string>();
  e.name = j.at("name").get<std::string>();
  e.credential_digest =
      Digest::from_hex(j.at("credential_digest").get<std::string>());
  e.statement_digest =
      Digest::from_hex(j.at("statement_digest").get<std::string>());
  e.outcome = j.at("outcome").get<uint8_t>();
  e.tx_digest = Digest::from_hex(j.at("tx_digest").get<std::string>());
  e.block_number = j.at("block_number").get<uint64_t>();
  return e;
}

json EventRef::to_json() const {
  return json{{"credential_digest", credential_digest.hex()},
              {"tx_digest", tx_digest.hex()},
              {"block_number", block_number}};
}

EventRef EventRef::from_json(const json& j) {
  EventRef r;
  r.credential_digest =
      Digest::from_hex(j.at("credential_digest").get<std::string>());
  r.tx_digest = Digest::from_hex(j.at("tx_digest").get<std::string>());
  r.block_number = j.at("block_number").get<uint64_t>();
  return r;
}

json Block::content_json() const {
  json txs_json = json::array();
  for (const auto& tx : txs) {
    txs_json.push_back(json{{"kind", tx.kind},
                            {"body", tx.body},
                            {"tx_digest", tx.tx_digest.hex()}});
  }
  json events_json = json::array();
  for (const auto& e : events) events_json.push_back(e.to_json());
  return json{{"number", number},
              {"parent_digest", parent_digest.hex()},
              {"timestamp", timestamp},
              {"txs", txs_json},
              {"events", events_json}};
}

Digest Block::digest() const {
  return sha256(content_json().dump());
}

json Block::to_json() const {
  json j = content_json();
  j["block_digest"] = digest().hex();
  return j;
}

Block Block::from_json(const json& j) {
  Block b;
  b.number = j.at("number").get<uint64_t>();
  b.parent_digest = Digest::from_hex(j.at("parent_digest").get<std::string>());
  b.timestamp = j.at("timestamp").get<uint64_t>();
  for (const auto& tj : j.at("txs")) {
    Transaction tx;
    tx.kind = tj.at("kind").get<std::string>();
    tx.body = tj.at("body");
    tx.tx_digest = Digest::from_hex(tj.at("tx_digest").get<std::string>());
    b.txs.push_back(std::move(tx));
  }
  for (const auto& ej : j.at("events"))
    b.events.push_back(LedgerEvent::from_json(ej));
  return b;
}

Chain::Chain(uint64_t genesis_timestamp,
             const proof::BackendRegistry* registry)
    : genesis_timestamp_(genesis_timestamp),
      registry_(registry ? registry : &proof::BackendRegistry::instance()) {
  Block genesis;
  genesis.number = 0;
  genesis.timestamp = genesis_timestamp;
  blocks_.push_back(std::move(genesis));
}

uint64_t Chain::height() const {
  std::lock_guard lock(*mu_);
  return blocks_.back().number;
}

Block Chain::block(uint64_t number) const {
  std::lock_guard lock(*mu_);
  if (number >= blocks_.size())
    throw Error(Errc::InvalidArgument, "no block " + std::to_string(number));
  return blocks_[number];
}

Block& Chain::append_block_locked() {
  Block b;
  b.number = blocks_.back().number + 1;
  b.parent_digest = blocks_.back().digest();
  b.timestamp = genesis_timestamp_ + b.number;
  blocks_.push_back(std::move(b));
  return blocks_.back();
}

VerifierContract Chain::deploy_verifier(const std::string& backend_id,
                                        const std::vector<Digest>& trusted_roots,
                                        const Digest& expected_measurement) {
  if (!registry_->has(backend_id))
    throw Error(Errc::UnknownBackend, backend_id);

  std::lock_guard lock(*mu_);
  Block& block = append_block_locked();

  json roots = json::array();
  for (const auto& r : trusted_roots) roots.push_back(r.hex());
  // The block number salts the address: identical parameters deployed in
  // different transactions yield different contracts.
  json body{{"backend_id", backend_id},
            {"trusted_roots", roots},
            {"expected_measurement", expected_measurement.hex()},
            {"deploy_block", block.number}};
  Digest deploy_digest = sha256(body.dump());

  VerifierContract contract;
  contract.address =
      "0x" + hex_encode(BytesView(deploy_digest.bytes.data(), 20));
  contract.backend_id = backend_id;
  contract.trusted_roots = trusted_roots;
  contract.expected_measurement = expected_measurement;
  body["address"] = contract.address;

  Transaction tx;
  tx.kind = "deploy";
  tx.body = body;
  tx.tx_digest = sha256(json{{"kind", tx.kind},
                             {"body", tx.body},
                             {"block", block.number}}
                            .dump());
  block.txs.push_back(std::move(tx));
  contracts_[contract.address] = contract;
  return contract;
}

const VerifierContract& Chain::contract(const std::string& address) const {
  std::lock_guard lock(*mu_);
  auto it = contracts_.find(address);
  if (it == contracts_.end()) throw Error(Errc::UnknownContract, address);
  return it->second;
}

TxReceipt Chain::submit_proof_tx(const VerifierContract& contract,
                                 const proof::ProofStatement& statement,
                                 const proof::Proof& proof_value) {
  {
    std::lock_guard lock(*mu_);
    if (!contracts_.contains(contract.address))
      throw Error(Errc::UnknownContract, contract.address);
  }

  // Contract-side validation: the proof verifies under the backend and the
  // statement's measurement equals the deployment's expectation.
  bool ok = false;
  try {
    ok = proof::verify_proof(contract.backend_id, statement, proof_value,
                             contract.trusted_roots, *registry_) &&
         statement.measurement == contract.expected_measurement;
  } catch (const Error&) {
    ok = false;  // malformed submissions are recorded, not verified
  }

  std::lock_guard lock(*mu_);
  Block& block = append_block_locked();
  Transaction tx;
  tx.kind = "submit";
  tx.body = json{{"contract", contract.address},
                 {"statement", statement.to_json()},
                 {"proof", proof_value.to_json()}};
  tx.tx_digest = sha256(json{{"kind", tx.kind},
                             {"body", tx.body},
                             {"block", block.number}}
                            .dump());

  TxReceipt receipt;
  receipt.tx_digest = tx.tx_digest;
  receipt.block_number = block.number;
  receipt.success = ok;

  if (ok) {
    LedgerEvent event;
    event.contract_address = contract.address;
    event.credential_digest = statement.credential_digest;
    event.statement_digest = proof::statement_digest(statement);
    event.outcome = statement.outcome;
    event.tx_digest = tx.tx_digest;
    event.block_number = block.number;
    block.events.push_back(event);
    for (const auto& cb : subscribers_) cb(event);
  }
  block.txs.push_back(std::move(tx));
  return receipt;
}

std::vector<LedgerEvent> Chain::get_events(const EventFilter& filter) const {
  std::lock_guard lock(*mu_);
  std::vector<LedgerEvent> out;
  for (const auto& block : blocks_) {
    if (block.number < filter.from_block) continue;
    for (const auto& e : block.events) {
      if (filter.contract && e.contract_address != *filter.contract) continue;
      if (filter.credential_digest &&
          e.credential_digest != *filter.credential_digest)
        continue;
      out.push_back(e);
    }
  }
  return out;
}

void Chain::subscribe(EventCallback cb) {
  std::lock_guard lock(*mu_);
  subscribers_.push_back(std::move(cb));
}

std::string Chain::serialize_jsonl() const {
  std::lock_guard lock(*mu_);
  std::string out;
  for (const auto& block : blocks_) out += block.to_json().dump() + "\n";
  return out;
}

void Chain::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
  out << serialize_jsonl();
}

Chain Chain::parse_jsonl(const std::string& text,
                         const proof::BackendRegistry* registry) {
  std::istringstream in(text);
  std::string line;
  std::vector<Block> blocks;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw Error(Errc::BrokenChain, "unparseable block line");
    Block b = Block::from_json(j);
    if (b.digest().hex() != j.at("block_digest").get<std::string>())
      throw Error(Errc::BrokenChain,
                  "block " + std::to_string(b.number) + " digest mismatch");
    blocks.push_back(std::move(b));
  }
  if (blocks.empty()) throw Error(Errc::BrokenChain, "no genesis block");

  Chain chain(blocks.front().timestamp, registry);
  chain.blocks_ = std::move(blocks);
  for (size_t i = 0; i < chain.blocks_.size(); ++i) {
    const Block& b = chain.blocks_[i];
    if (b.number != i)
      throw Error(Errc::BrokenChain, "non-contiguous block numbers");
    if (i > 0 && b.parent_digest != chain.blocks_[i - 1].digest())
      throw Error(Errc::BrokenChain,
                  "parent digest broken at block " + std::to_string(i));
    if (i == 0 && !b.parent_digest.is_zero())
      throw Error(Errc::BrokenChain, "genesis parent digest must be zero");
    // Re-play deployments so the contract table matches the chain.
    for (const auto& tx : b.txs) {
      if (tx.kind == "deploy") {
        VerifierContract c;
        c.address = tx.body.at("address").get<std::string>();
        c.backend_id = tx.body.at("backend_id").get<std::string>();
        for (const auto& r : tx.body.at("trusted_roots"))
          c.trusted_roots.push_back(Digest::from_hex(r.get<std::string>()));
        c.expected_measurement = Digest::from_hex(
            tx.body.at("expected_measurement").get<std::string>());
        chain.contracts_[c.address] = std::move(c);
      }
    }
  }
  return chain;
}

Chain Chain::load(const std::string& path,
                  const proof::BackendRegistry* registry) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_jsonl(buf.str(), registry);
}

}  // namespace ssibridge::ledger
