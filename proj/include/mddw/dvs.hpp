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

#include <optional>

#include "mddw/bits.hpp"
#include "mddw/group.hpp"

namespace mddw {

// Pairing-based designated-verifier signature:
//   h = H0(m, r),  s = H1(e(vpk, h^ssk))
// and verification recomputes s as H1(e(spk, h^vsk)); the two pairings agree
// by bilinearity. Two forms:
//   rs     - sigma = (r, s) with fresh 32-byte r
//   s_only - r derived from a caller-supplied context, sigma carries only s
// Both sides evaluate the pairing as e(pk, h)^sk, the same group element.

enum class DvsMode { rs, s_only };

inline constexpr size_t kDvsProdBits = 256;
inline constexpr size_t kDvsTestBits = 16;

struct DvsKeyPair {
  Scalar sk;
  GroupElem pk;
};

struct DvsSig {
  std::optional<Bytes> r;  // absent in s_only mode
  BitString s;
};

inline DvsKeyPair dvs_keygen(const Group& G, Rng& rng) {
  Scalar sk = G.rand_scalar_nonzero(rng);
  return DvsKeyPair{sk, G.exp(G.generator(), sk)};
}

namespace detail {

inline Bytes dvs_ctx_rand(BytesView ctx) { return xof("MDDW/DVSR", ctx, 32); }

inline GroupElem dvs_h0(const Group& G, BytesView r32, BytesView m) {
  Bytes in(r32.begin(), r32.end());
  append(in, m);
  return G.hash_to_group("MDDW/DVSH0", in);
}

inline BitString dvs_h1(const Group& G, const GtElem& u, size_t l_bits) {
  Bytes d = xof("MDDW/DVSH1", G.gt_encode(u), (l_bits + 7) / 8);
  return BitString::from_packed(d, l_bits);
}

}  // namespace detail

inline DvsSig dvs_sign(const Group& G, const Scalar& ssk, const GroupElem& vpk, BytesView m,
                       DvsMode mode, BytesView ctx, Rng& rng, size_t l_bits) {
  Bytes r = mode == DvsMode::rs ? rng.bytes(32) : detail::dvs_ctx_rand(ctx);
  GroupElem h = detail::dvs_h0(G, r, m);
  GtElem u = G.gt_exp(G.pair(vpk, h), ssk);  // = e(vpk, h^ssk)
  DvsSig sig{std::nullopt, detail::dvs_h1(G, u, l_bits)};
  if (mode == DvsMode::rs) sig.r = std::move(r);
  return sig;
}

inline bool dvs_verify(const Group& G, const GroupElem& spk, const Scalar& vsk, BytesView m,
                       const DvsSig& sig, DvsMode mode, BytesView ctx) {
  Bytes r;
  if (mode == DvsMode::rs) {
    if (!sig.r || sig.r->size() != 32) return false;
    r = *sig.r;
  } else {
    r = detail::dvs_ctx_rand(ctx);
  }
  GroupElem h = detail::dvs_h0(G, r, m);
  GtElem u = G.gt_exp(G.pair(spk, h), vsk);  // = e(spk, h^vsk)
  return detail::dvs_h1(G, u, sig.s.size()) == sig.s;
}

// The single-verifier forgery: the designated verifier computes the very
// same pairing value the signer would, so the output is byte-identical to
// an honest signature.
inline DvsSig dvs_forge_by_verifier(const Group& G, const GroupElem& spk, const Scalar& vsk,
                                    BytesView m, DvsMode mode, BytesView ctx, Rng& rng,
                                    size_t l_bits) {
  Bytes r = mode == DvsMode::rs ? rng.bytes(32) : detail::dvs_ctx_rand(ctx);
  GroupElem h = detail::dvs_h0(G, r, m);
  GtElem u = G.gt_exp(G.pair(spk, h), vsk);
  DvsSig sig{std::nullopt, detail::dvs_h1(G, u, l_bits)};
  if (mode == DvsMode::rs) sig.r = std::move(r);
  return sig;
}

}  // namespace mddw
