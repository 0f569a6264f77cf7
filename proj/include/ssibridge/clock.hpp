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

namespace ssibridge {

// All library code takes time through this interface; nothing reads the wall
// clock. Validity-window behavior is only testable with a steerable clock.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual uint64_t now() const = 0;  // unix seconds
};

class ManualClock : public Clock {
 public:
  explicit ManualClock(uint64_t start) : now_(start) {}
  uint64_t now() const override { return now_; }
  void set(uint64_t t) { now_ = t; }
  void advance(uint64_t seconds) { now_ += seconds; }

 private:
  uint64_t now_;
};

}  // namespace ssibridge
