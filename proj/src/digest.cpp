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

#include "ssibridge/digest.hpp"

#include <sodium.h>

#include <algorithm>

#include "ssibridge/error.hpp"

namespace ssibridge {

Digest Digest::from_hex(std::string_view text) {
  if (text.size() != 64)
    throw Error(Errc::MalformedEncoding, "digest hex must be 64 chars");
  Bytes raw = hex_decode(text);
  Digest d;
  std::copy(raw.begin(), raw.end(), d.bytes.begin());
  return d;
}

bool Digest::is_zero() const {
  return std::all_of(bytes.begin(), bytes.end(),
                     [](uint8_t b) { return b == 0; });
}

Digest sha256(BytesView data) {
  Digest d;
  crypto_hash_sha256(d.bytes.data(), data.data(), data.size());
  return d;
}

Digest sha256(std::string_view data) {
  return sha256(BytesView(reinterpret_cast<const uint8_t*>(data.data()),
                          data.size()));
}

}  // namespace ssibridge
