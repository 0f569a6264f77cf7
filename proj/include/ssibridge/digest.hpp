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

#include <array>
#include <compare>
#include <string>
#include <string_view>

#include "ssibridge/bytes.hpp"

namespace ssibridge {

// 32-byte SHA-256 value. Canonical text form is lowercase hex, 64 chars.
struct Digest {
  std::array<uint8_t, 32> bytes{};

  std::string hex() const { return hex_encode(bytes); }
  static Digest from_hex(std::string_view text);

  bool is_zero() const;
  auto operator<=>(const Digest&) const = default;
};

Digest sha256(BytesView data);
Digest sha256(std::string_view data);

}  // namespace ssibridge
