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

#include "ssibridge/jwk.hpp"

#include <sodium.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>

#include "ssibridge/error.hpp"

namespace ssibridge {

const char kDefaultSuiteId[] = "ed25519-sha256";

Digest Jwk::fingerprint() const {
  return sha256(to_json(false).dump());
}

json Jwk::to_json(bool include_private) const {
  json j{{"kid", key_id},
         {"suite", suite_id},
         {"pub", b64url_encode(public_material)}};
  if (include_private && private_material)
    j["priv"] = b64url_encode(*private_material);
  return j;
}

Jwk Jwk::from_json(const json& j) {
  Jwk k;
  k.key_id = j.at("kid").get<std::string>();
  k.suite_id = j.at("suite").get<std::string>();
  k.public_material = b64url_decode(j.at("pub").get<std::string>());
  if (j.contains("priv"))
    k.private_material = b64url_decode(j.at("priv").get<std::string>());
  return k;
}

namespace {

void ensure_sodium() {
  static const int rc = sodium_init();
  if (rc < 0) throw Error(Errc::IoError, "libsodium init failed");
}

class Ed25519Sha256Suite : public SignatureSuite {
 public:
  std::string suite_id() const override { return kDefaultSuiteId; }

  Jwk generate(const std::string& key_id, Rng& rng) const override {
    ensure_sodium();
    Bytes seed = rng.bytes(crypto_sign_SEEDBYTES);
    Bytes pk(crypto_sign_PUBLICKEYBYTES);
    Bytes sk(crypto_sign_SECRETKEYBYTES);
    crypto_sign_seed_keypair(pk.data(), sk.data(), seed.data());
    return Jwk{key_id, kDefaultSuiteId, pk, sk};
  }

  Bytes sign(const Jwk& key, BytesView message) const override {
    ensure_sodium();
    if (!key.has_private())
      throw Error(Errc::SigningKeyUnavailable, key.key_id);
    Digest d = sha256(message);
    Bytes sig(crypto_sign_BYTES);
    crypto_sign_detached(sig.data(), nullptr, d.bytes.data(), d.bytes.size(),
                         key.private_material->data());
    return sig;
  }

  bool verify(const Jwk& pub, BytesView message, BytesView sig) const override {
    ensure_sodium();
    if (sig.size() != crypto_sign_BYTES ||
        pub.public_material.size() != crypto_sign_PUBLICKEYBYTES)
      return false;
    Digest d = sha256(message);
    return crypto_sign_verify_detached(sig.data(), d.bytes.data(),
                                       d.bytes.size(),
                                       pub.public_material.data()) == 0;
  }
};

}  // namespace

struct SuiteRegistry::Impl {
  std::mutex mu;
  std::map<std::string, std::unique_ptr<SignatureSuite>, std::less<>> suites;
};

SuiteRegistry::SuiteRegistry() : impl_(std::make_shared<Impl>()) {
  impl_->suites[kDefaultSuiteId] = std::make_unique<Ed25519Sha256Suite>();
}

SuiteRegistry& SuiteRegistry::instance() {
  static SuiteRegistry reg;
  return reg;
}

void SuiteRegistry::add(std::unique_ptr<SignatureSuite> suite) {
  std::lock_guard lock(impl_->mu);
  impl_->suites[suite->suite_id()] = std::move(suite);
}

const SignatureSuite& SuiteRegistry::get(std::string_view suite_id) const {
  std::lock_guard lock(impl_->mu);
  auto it = impl_->suites.find(suite_id);
  if (it == impl_->suites.end())
    throw Error(Errc::UnknownSuite, std::string(suite_id));
  return *it->second;
}

Jwk generate_key(const std::string& key_id, Rng& rng,
                 const std::string& suite_id) {
  return SuiteRegistry::instance().get(suite_id).generate(key_id, rng);
}

Bytes sign_bytes(const Jwk& key, BytesView message) {
  return SuiteRegistry::instance().get(key.suite_id).sign(key, message);
}

bool verify_bytes(const Jwk& pub, BytesView message, BytesView sig) {
  return SuiteRegistry::instance().get(pub.suite_id).verify(pub, message, sig);
}

void save_key(const std::string& dir, const Jwk& key, bool include_private) {
  std::filesystem::create_directories(dir);
  auto path = std::filesystem::path(dir) / (key.key_id + ".json");
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out << key.to_json(include_private).dump(2) << "\n";
}

Jwk load_key(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot read " + path);
  json j = json::parse(in, nullptr, true);
  return Jwk::from_json(j);
}

}  // namespace ssibridge
