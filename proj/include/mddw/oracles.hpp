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

#include <string_view>

#include "mddw/bits.hpp"
#include "mddw/bytes.hpp"
#include "mddw/xof.hpp"

namespace mddw {

using Token = uint32_t;
using TokenSeq = std::vector<Token>;
using TokenView = std::span<const Token>;

// Domain tags. Every conforming implementation must reproduce these digests
// byte-exactly; golden vectors live in tests/golden.
inline constexpr std::string_view kTagH1 = "MDDW/H1";
inline constexpr std::string_view kTagH2 = "MDDW/H2";
inline constexpr std::string_view kTagH3 = "MDDW/H3";
inline constexpr std::string_view kTagPrf = "MDDW/PRF";
inline constexpr std::string_view kTagCommit = "MDDW/COM";
inline constexpr std::string_view kTagMock = "MDDW/MOCK";

// Canonical token encoding: 8-byte big-endian token count, then each token
// as 4 big-endian bytes. Injective over sequences of any length.
inline Bytes encode_tokens(TokenView tokens, uint32_t vocab = 0) {
  Bytes out;
  out.reserve(8 + 4 * tokens.size());
  append_u64be(out, tokens.size());
  for (Token t : tokens) {
    if (vocab != 0 && t >= vocab) throw TokenOutOfRange("token >= vocab size");
    append_u32be(out, t);
  }
  return out;
}

inline TokenSeq decode_tokens(BytesView b) {
  if (b.size() < 8) throw DecodeError("token encoding too short");
  uint64_t n = 0;
  for (int i = 0; i < 8; i++) n = n << 8 | b[i];
  if (b.size() != 8 + 4 * n) throw DecodeError("token encoding length mismatch");
  TokenSeq out(n);
  for (uint64_t i = 0; i < n; i++) {
    uint32_t t = 0;
    for (int j = 0; j < 4; j++) t = t << 8 | b[8 + 4 * i + j];
    out[i] = t;
  }
  return out;
}

struct PrfKey {
  Bytes key;  // 32 bytes
};

struct Commitment {
  Bytes com;  // 32 bytes
  bool operator==(const Commitment&) const = default;
};

// H1: {0,1}* -> M. Digest of one anchor block; the message the backend
// signature schemes sign.
inline Bytes h1_message(TokenView block, size_t ell) {
  if (block.size() != ell) throw WrongBlockLength("H1 expects exactly ell tokens");
  return xof(kTagH1, encode_tokens(block), 32);
}

// H2: the XOR mask stream for a signature, keyed by the anchor block.
// Prefix-consistent: a shorter request is a prefix of a longer one.
inline BitString h2_mask(TokenView block, size_t ell, size_t out_bits) {
  if (block.size() != ell) throw WrongBlockLength("H2 expects exactly ell tokens");
  Bytes packed = xof(kTagH2, encode_tokens(block), (out_bits + 7) / 8);
  return BitString::from_packed(packed, out_bits);
}

// H3: the per-carrier-block bit. `m_with_x` is the carrier prefix of the
// current watermark including the candidate block, exactly the sequence the
// detector rebuilds; sigma_prev is appended one byte per bit.
inline uint8_t h3_bit(TokenView m_with_x, const BitString& sigma_prev) {
  Bytes in = encode_tokens(m_with_x);
  append(in, sigma_prev.raw());
  return (xof(kTagH3, in, 1)[0] >> 7) & 1;
}

inline Bytes prf_eval(const PrfKey& k, BytesView input) {
  if (k.key.size() != 32) throw WrongLength("PRF key must be 32 bytes");
  Bytes in = k.key;
  append(in, input);
  return xof(kTagPrf, in, 32);
}

inline Commitment commit(BytesView msg, BytesView r32) {
  if (r32.size() != 32) throw WrongLength("commitment randomness must be 32 bytes");
  Bytes in(r32.begin(), r32.end());
  append(in, msg);
  return Commitment{xof(kTagCommit, in, 32)};
}

inline bool decommit(const Commitment& com, BytesView r32, BytesView msg) {
  if (r32.size() != 32) return false;
  return commit(msg, r32) == com;
}

}  // namespace mddw
