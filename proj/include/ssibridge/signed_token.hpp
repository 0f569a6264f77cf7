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

#include <string>
#include <string_view>

#include "ssibridge/jwk.hpp"

namespace ssibridge {

// Compact signed token: b64url(header).b64url(payload).b64url(sig), signed
// over the ASCII signing input "header_b64.payload_b64". One serializer is
// shared by credentials, entity statements and attested credentials.
//
// The token keeps the segments exactly as produced or parsed; hashing and
// re-serialization always operate on those transmitted bytes, never on a
// re-encoded payload.
class SignedToken {
 public:
  SignedToken() = default;

  static SignedToken sign(const Jwk& key, const json& payload,
                          const std::string& typ,
                          const json& extra_header = json::object());
  // Splits and decodes; throws MalformedToken. Does not verify.
  static SignedToken parse(std::string_view compact);

  const json& header() const { return header_; }
  const json& payload() const { return payload_; }
  std::string kid() const;
  std::string suite_id() const;

  // Signature check under the given public key (suite from the header).
  bool verify(const Jwk& pub) const;

  const std::string& compact() const { return compact_; }
  std::string signing_input() const;

  bool operator==(const SignedToken& other) const {
    return compact_ == other.compact_;
  }

 private:
  std::string compact_;
  json header_;
  json payload_;
};

}  // namespace ssibridge
