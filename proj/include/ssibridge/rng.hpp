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

#include <random>

#include "ssibridge/bytes.hpp"

namespace ssibridge {

// Seedable byte source for salts and key seeds. mt19937_64 output is fixed by
// the standard, so a seed pins the whole artifact run byte-for-byte across
// platforms. Not a CSPRNG; this is a simulation harness.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  Bytes bytes(size_t n) {
    Bytes out;
    out.reserve(n);
    while (out.size() < n) {
      uint64_t v = engine_();
      for (int i = 0; i < 8 && out.size() < n; ++i) {
        out.push_back(static_cast<uint8_t>(v >> (8 * i)));
      }
    }
    return out;
  }

  uint64_t next_u64() { return engine_(); }

  // Derive an independent child stream, so subsystems seeded from one run
  // seed cannot perturb each other's draw sequences.
  Rng fork() { return Rng(engine_()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ssibridge
