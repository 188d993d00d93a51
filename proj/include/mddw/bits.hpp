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

#include <cstdint>

#include "mddw/bytes.hpp"

namespace mddw {

// Bit sequence with exact length tracking. Bit order relative to bytes is
// most-significant bit first, both when packing and unpacking.
class BitString {
 public:
  BitString() = default;
  explicit BitString(size_t n) : bits_(n, 0) {}

  static BitString from_packed(BytesView packed, size_t nbits) {
    if (packed.size() * 8 < nbits) throw WrongLength("packed buffer too short");
    BitString b(nbits);
    for (size_t i = 0; i < nbits; i++) {
      b.bits_[i] = (packed[i / 8] >> (7 - i % 8)) & 1;
    }
    return b;
  }

  Bytes to_packed() const {
    Bytes out((bits_.size() + 7) / 8, 0);
    for (size_t i = 0; i < bits_.size(); i++) {
      if (bits_[i]) out[i / 8] |= static_cast<uint8_t>(1u << (7 - i % 8));
    }
    return out;
  }

  size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  uint8_t operator[](size_t i) const { return bits_[i]; }
  void set(size_t i, uint8_t v) { bits_[i] = v & 1; }
  void push_back(uint8_t v) { bits_.push_back(v & 1); }

  BitString prefix(size_t n) const {
    BitString b;
    b.bits_.assign(bits_.begin(), bits_.begin() + n);
    return b;
  }

  void xor_with(const BitString& other) {
    if (other.size() != size()) throw WrongLength("XOR on unequal bit lengths");
    for (size_t i = 0; i < bits_.size(); i++) bits_[i] ^= other.bits_[i];
  }

  // One byte per bit (0x00/0x01); the canonical form fed into H3 inputs.
  const Bytes& raw() const { return bits_; }

  bool operator==(const BitString&) const = default;

 private:
  Bytes bits_;  // one byte per bit, each 0 or 1
};

}  // namespace mddw
