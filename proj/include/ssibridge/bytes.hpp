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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ssibridge {

using Bytes = std::vector<uint8_t>;
using BytesView = std::span<const uint8_t>;

inline Bytes to_bytes(std::string_view s) {
  return Bytes(s.begin(), s.end());
}
inline std::string to_string(BytesView b) {
  return std::string(b.begin(), b.end());
}

// base64url without padding (RFC 4648 §5).
std::string b64url_encode(BytesView data);
// Throws Error(Errc::MalformedEncoding) on bad alphabet or stray padding.
Bytes b64url_decode(std::string_view text);

std::string hex_encode(BytesView data);
Bytes hex_decode(std::string_view text);

// Big-endian helpers used by the canonical binary encodings.
void put_u32be(Bytes& out, uint32_t v);
void put_u64be(Bytes& out, uint64_t v);

}  // namespace ssibridge
