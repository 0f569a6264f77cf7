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
#include <optional>
#include <string>

#include "json.hpp"  // vendored nlohmann::json

#include "ssibridge/bytes.hpp"
#include "ssibridge/digest.hpp"
#include "ssibridge/rng.hpp"

namespace ssibridge {

using json = nlohmann::json;

struct Jwk {
  std::string key_id;
  std::string suite_id;
  Bytes public_material;
  std::optional<Bytes> private_material;

  bool has_private() const { return private_material.has_value(); }
  Jwk public_only() const { return {key_id, suite_id, public_material, std::nullopt}; }

  // Stable identifier of the public half: SHA-256 over the canonical public
  // JSON form (kid, suite and key bytes all contribute).
  Digest fingerprint() const;

  json to_json(bool include_private = false) const;
  static Jwk from_json(const json& j);
};

// Signing primitive behind every token, statement and cert in the project.
class SignatureSuite {
 public:
  virtual ~SignatureSuite() = default;
  virtual std::string suite_id() const = 0;
  virtual Jwk generate(const std::string& key_id, Rng& rng) const = 0;
  virtual Bytes sign(const Jwk& key, BytesView message) const = 0;
  virtual bool verify(const Jwk& pub, BytesView message, BytesView sig) const = 0;
};

// "ed25519-sha256": Ed25519 over the SHA-256 digest of the message.
// Deterministic signatures keep seeded runs byte-identical.
extern const char kDefaultSuiteId[];

class SuiteRegistry {
 public:
  static SuiteRegistry& instance();
  void add(std::unique_ptr<SignatureSuite> suite);
  const SignatureSuite& get(std::string_view suite_id) const;  // throws UnknownSuite

 private:
  SuiteRegistry();
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// Convenience wrappers resolving the suite from the key.
Jwk generate_key(const std::string& key_id, Rng& rng,
                 const std::string& suite_id = kDefaultSuiteId);
Bytes sign_bytes(const Jwk& key, BytesView message);       // throws SigningKeyUnavailable
bool verify_bytes(const Jwk& pub, BytesView message, BytesView sig);

// keys/<key_id>.json persistence.
void save_key(const std::string& dir, const Jwk& key, bool include_private);
Jwk load_key(const std::string& path);

}  // namespace ssibridge
