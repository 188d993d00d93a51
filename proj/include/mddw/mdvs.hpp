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

#include <vector>

#include "mddw/bits.hpp"
#include "mddw/group.hpp"

namespace mddw {

// Multi-designated verifier signature: a two-branch OR proof over the signer
// key and the aggregated verifier key Y = prod_i vpk_i^{h_i}. Constant size
// in the number of designated verifiers. The designated set can jointly
// forge (mdvs_fge_ds) by simulating the signer branch instead, which is what
// makes the scheme off-the-record.

struct MdvsKeyPair {
  Scalar sk;
  GroupElem pk;
};

struct MdvsSignature {
  Scalar c1, c2, z1, z2;
  bool operator==(const MdvsSignature&) const = default;
};

inline MdvsKeyPair mdvs_keygen(const Group& G, Rng& rng) {
  Scalar sk = G.rand_scalar_nonzero(rng);
  return MdvsKeyPair{sk, G.exp(G.generator(), sk)};
}

namespace detail {

struct MdvsAggregate {
  std::vector<Scalar> h;  // per-verifier challenges, in canonical vpk order
  GroupElem Y;
};

inline Bytes mdvs_common_frame(const Group& G, const GroupElem& spk,
                               const std::vector<GroupElem>& vpks_sorted, BytesView m) {
  Bytes out = G.encode(spk);
  append_u32be(out, static_cast<uint32_t>(vpks_sorted.size()));
  for (const auto& v : vpks_sorted) append(out, G.encode(v));
  append_u64be(out, m.size());
  append(out, m);
  return out;
}

inline MdvsAggregate mdvs_aggregate(const Group& G, const GroupElem& spk,
                                    const std::vector<GroupElem>& vpks_sorted, BytesView m) {
  Bytes frame = mdvs_common_frame(G, spk, vpks_sorted, m);
  frame.resize(frame.size() + 4);
  MdvsAggregate agg;
  agg.Y = G.identity();
  agg.h.reserve(vpks_sorted.size());
  for (uint32_t i = 0; i < vpks_sorted.size(); i++) {
    for (int j = 0; j < 4; j++) frame[frame.size() - 4 + j] = static_cast<uint8_t>(i >> (24 - 8 * j));
    Scalar hi = G.hash_to_scalar("MDDW/MDVS/h", frame);
    agg.Y = G.mul(agg.Y, G.exp(vpks_sorted[i], hi));
    agg.h.push_back(hi);
  }
  return agg;
}

inline Scalar mdvs_challenge(const Group& G, const GroupElem& T1, const GroupElem& T2,
                             const GroupElem& spk, const std::vector<GroupElem>& vpks_sorted,
                             const MdvsAggregate& agg, BytesView m) {
  Bytes in = G.encode(T1);
  append(in, G.encode(T2));
  append(in, G.encode(spk));
  append_u32be(in, static_cast<uint32_t>(vpks_sorted.size()));
  for (size_t i = 0; i < vpks_sorted.size(); i++) {
    append(in, G.encode(vpks_sorted[i]));
    append(in, G.s_encode(agg.h[i]));
  }
  append_u64be(in, m.size());
  append(in, m);
  append(in, G.encode(agg.Y));
  return G.hash_to_scalar("MDDW/MDVS/c", in);
}

}  // namespace detail

inline MdvsSignature mdvs_sign(const Group& G, const Scalar& ssk, const GroupElem& spk,
                               std::vector<GroupElem> vpks, BytesView m, Rng& rng) {
  if (vpks.empty()) throw EmptyVerifierSet("MDVS requires at least one designated verifier");
  vpks = sorted_by_encoding(G, std::move(vpks));
  auto agg = detail::mdvs_aggregate(G, spk, vpks, m);

  Scalar r = G.rand_scalar_nonzero(rng);
  Scalar c2 = G.rand_scalar_nonzero(rng);
  Scalar z2 = G.rand_scalar_nonzero(rng);
  GroupElem T1 = G.exp(G.generator(), r);
  GroupElem T2 = G.mul(G.exp(agg.Y, c2), G.exp(G.generator(), z2));
  Scalar c = detail::mdvs_challenge(G, T1, T2, spk, vpks, agg, m);
  Scalar c1 = G.s_sub(c, c2);
  Scalar z1 = G.s_sub(r, G.s_mul(c1, ssk));
  return MdvsSignature{c1, c2, z1, z2};
}

// Returns 0 rather than throwing when the caller is not designated,
// mirroring the detection-oracle convention.
inline bool mdvs_verify(const Group& G, const GroupElem& spk, const Scalar& vsk,
                        std::vector<GroupElem> vpks, BytesView m, const MdvsSignature& sig) {
  if (vpks.empty()) return false;
  GroupElem vpk = G.exp(G.generator(), vsk);
  bool designated = false;
  for (const auto& v : vpks) designated = designated || v == vpk;
  if (!designated) return false;

  vpks = sorted_by_encoding(G, std::move(vpks));
  auto agg = detail::mdvs_aggregate(G, spk, vpks, m);
  GroupElem T1 = G.mul(G.exp(spk, sig.c1), G.exp(G.generator(), sig.z1));
  GroupElem T2 = G.mul(G.exp(agg.Y, sig.c2), G.exp(G.generator(), sig.z2));
  Scalar c = detail::mdvs_challenge(G, T1, T2, spk, vpks, agg, m);
  return c == G.s_add(sig.c1, sig.c2);
}

// Joint forgery by the full designated set: simulate the signer branch,
// prove the Y branch with sk_Y = sum_i h_i * vsk_i.
inline MdvsSignature mdvs_fge_ds(const Group& G, const GroupElem& spk,
                                 const std::vector<Scalar>& vsks, BytesView m, Rng& rng) {
  if (vsks.empty()) throw EmptyVerifierSet("forging requires the designated verifier secrets");
  std::vector<std::pair<Bytes, size_t>> order;
  std::vector<GroupElem> vpks;
  vpks.reserve(vsks.size());
  for (size_t i = 0; i < vsks.size(); i++) {
    vpks.push_back(G.exp(G.generator(), vsks[i]));
    order.emplace_back(G.encode(vpks.back()), i);
  }
  std::sort(order.begin(), order.end());
  std::vector<GroupElem> vpks_sorted;
  std::vector<Scalar> vsks_sorted;
  for (auto& [enc, idx] : order) {
    vpks_sorted.push_back(vpks[idx]);
    vsks_sorted.push_back(vsks[idx]);
  }

  auto agg = detail::mdvs_aggregate(G, spk, vpks_sorted, m);
  Scalar sk_y = G.s_zero();
  for (size_t i = 0; i < vsks_sorted.size(); i++)
    sk_y = G.s_add(sk_y, G.s_mul(agg.h[i], vsks_sorted[i]));

  Scalar c1 = G.rand_scalar_nonzero(rng);
  Scalar z1 = G.rand_scalar_nonzero(rng);
  Scalar r = G.rand_scalar_nonzero(rng);
  GroupElem T1 = G.mul(G.exp(spk, c1), G.exp(G.generator(), z1));
  GroupElem T2 = G.exp(G.generator(), r);
  Scalar c = detail::mdvs_challenge(G, T1, T2, spk, vpks_sorted, agg, m);
  Scalar c2 = G.s_sub(c, c1);
  Scalar z2 = G.s_sub(r, G.s_mul(c2, sk_y));
  return MdvsSignature{c1, c2, z1, z2};
}

inline size_t mdvs_sig_bits(const Group& G) { return 4 * 8 * G.scalar_bytes(); }

inline Bytes mdvs_sig_encode(const Group& G, const MdvsSignature& sig) {
  Bytes out = G.s_encode(sig.c1);
  append(out, G.s_encode(sig.c2));
  append(out, G.s_encode(sig.z1));
  append(out, G.s_encode(sig.z2));
  return out;
}

inline MdvsSignature mdvs_sig_decode(const Group& G, BytesView b) {
  size_t w = G.scalar_bytes();
  if (b.size() != 4 * w) throw WrongLength("bad MDVS signature length");
  return MdvsSignature{G.s_decode(b.first(w)), G.s_decode(b.subspan(w, w)),
                       G.s_decode(b.subspan(2 * w, w)), G.s_decode(b.subspan(3 * w, w))};
}

inline BitString mdvs_sig_to_bits(const Group& G, const MdvsSignature& sig) {
  return BitString::from_packed(mdvs_sig_encode(G, sig), mdvs_sig_bits(G));
}

inline MdvsSignature mdvs_bits_to_sig(const Group& G, const BitString& bits) {
  if (bits.size() != mdvs_sig_bits(G)) throw WrongLength("bad MDVS signature bit length");
  return mdvs_sig_decode(G, bits.to_packed());
}

}  // namespace mddw
