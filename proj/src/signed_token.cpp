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

#include "ssibridge/signed_token.hpp"

#include "ssibridge/error.hpp"

namespace ssibridge {

SignedToken SignedToken::sign(const Jwk& key, const json& payload,
                              const std::string& typ,
                              const json& extra_header) {
  if (!key.has_private())
    throw Error(Errc::SigningKeyUnavailable, key.key_id);
  json header{{"alg", key.suite_id}, {"kid", key.key_id}, {"typ", typ}};
  for (auto it = extra_header.begin(); it != extra_header.end(); ++it)
    header[it.key()] = it.value();

  std::string h64 = b64url_encode(to_bytes(header.dump()));
  std::string p64 = b64url_encode(to_bytes(payload.dump()));
  std::string input = h64 + "." + p64;
  Bytes sig = sign_bytes(key, to_bytes(input));

  SignedToken t;
  t.compact_ = input + "." + b64url_encode(sig);
  t.header_ = std::move(header);
  t.payload_ = payload;
  return t;
}

SignedToken SignedToken::parse(std::string_view compact) {
  size_t d1 = compact.find('.');
  size_t d2 = compact.rfind('.');
  if (d1 == std::string_view::npos || d2 == d1)
    throw Error(Errc::MalformedToken, "expected three dot-separated segments");
  SignedToken t;
  t.compact_ = std::string(compact);
  try {
    t.header_ = json::parse(to_string(b64url_decode(compact.substr(0, d1))));
    t.payload_ = json::parse(
        to_string(b64url_decode(compact.substr(d1 + 1, d2 - d1 - 1))));
    b64url_decode(compact.substr(d2 + 1));  // validate signature segment
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedToken, e.what());
  }
  if (!t.header_.is_object() || !t.payload_.is_object())
    throw Error(Errc::MalformedToken, "header/payload must be JSON objects");
  return t;
}

std::string SignedToken::kid() const {
  return header_.value("kid", std::string());
}

std::string SignedToken::suite_id() const {
  return header_.value("alg", std::string());
}

bool SignedToken::verify(const Jwk& pub) const {
  size_t d2 = compact_.rfind('.');
  if (d2 == std::string::npos) return false;
  Bytes sig;
  try {
    sig = b64url_decode(std::string_view(compact_).substr(d2 + 1));
  } catch (const Error&) {
    return false;
  }
  std::string input = compact_.substr(0, d2);
  try {
    return verify_bytes(pub, to_bytes(input), sig);
  } catch (const Error&) {
    return false;  // unknown suite in a hostile token is a verify failure
  }
}

std::string SignedToken::signing_input() const {
  size_t d2 = compact_.rfind('.');
  return compact_.substr(0, d2);
}

}  // namespace ssibridge
