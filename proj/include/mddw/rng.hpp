// Copyright 2026 The mddw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstring>
#include <random>

#include "mddw/bytes.hpp"
#include "mddw/xof.hpp"

namespace mddw {

// Deterministic byte stream: SHAKE256 in counter mode over the seed.
// One instance per logical consumer; not safe for concurrent use.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    seed_.resize(8);
    for (int i = 0; i < 8; i++) seed_[i] = static_cast<uint8_t>(seed >> (56 - 8 * i));
  }
  explicit Rng(Bytes seed) : seed_(std::move(seed)) {}

  // Nondeterministic seeding for production key generation.
  static Rng from_entropy() {
    std::random_device rd;
    Bytes seed(32);
    for (size_t i = 0; i < seed.size(); i += 4) {
      uint32_t w = rd();
      std::memcpy(seed.data() + i, &w, 4);
    }
    return Rng(std::move(seed));
  }

  void fill(uint8_t* out, size_t n) {
    while (n > 0) {
      if (pos_ == buf_.size()) refill();
      size_t take = std::min(n, buf_.size() - pos_);
      std::memcpy(out, buf_.data() + pos_, take);
      pos_ += take;
      out += take;
      n -= take;
    }
  }

  Bytes bytes(size_t n) {
    Bytes out(n);
    fill(out.data(), n);
    return out;
  }

  uint64_t u64() {
    uint8_t b[8];
    fill(b, 8);
    uint64_t v = 0;
    for (int i = 0; i < 8; i++) v = v << 8 | b[i];
    return v;
  }

  // Uniform in [0, bound) by rejection.
  uint64_t below(uint64_t bound) {
    uint64_t lim = bound * (UINT64_MAX / bound);
    for (;;) {
      uint64_t v = u64();
      if (v < lim) return v % bound;
    }
  }

  // Derive an independent child stream; used to hand sub-components their
  // own reproducible randomness.
  Rng fork(std::string_view label) {
    Bytes in = seed_;
    append_u64be(in, forks_++);
    append(in, from_string(std::string(label)));
    return Rng(xof("MDDW/RNG/FORK", in, 32));
  }

 private:
  void refill() {
    Bytes in = seed_;
    append_u64be(in, counter_++);
    buf_ = xof("MDDW/RNG", in, 512);
    pos_ = 0;
  }

  Bytes seed_;
  Bytes buf_;
  size_t pos_ = 0;
  uint64_t counter_ = 0;
  uint64_t forks_ = 0;
};

}  // namespace mddw
