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

#include "mddw/mdvs.hpp"
#include "mddw/oracles.hpp"
#include "mddw/schnorr.hpp"

namespace mddw {

// Claimable MDVS: wraps the MDVS with a PRF-derived Schnorr signature over
// (spk, sigma_mdvs) and a commitment to it. Verification uses only the inner
// MDVS signature; the commitment exists so the genuine signer can later open
// it (Claim) and everyone else can check the opening (ClmVer).

struct CmdvsPublicKey {
  GroupElem spk_sig;
  GroupElem spk_mdvs;
  bool operator==(const CmdvsPublicKey&) const = default;
};

struct CmdvsSignerKey {
  PrfKey k;
  Scalar ssk_sig;
  Scalar ssk_mdvs;
  CmdvsPublicKey pub;
};

struct CmdvsSignature {
  MdvsSignature inner;
  Commitment com;
  bool operator==(const CmdvsSignature&) const = default;
};

struct CmdvsClaim {
  Bytes r_commit;  // 32 bytes
  SchnorrSig sigma_sig;
};

inline CmdvsSignerKey cmdvs_keygen(const Group& G, Rng& rng) {
  CmdvsSignerKey key;
  key.k = PrfKey{rng.bytes(32)};
  key.ssk_sig = G.rand_scalar_nonzero(rng);
  key.ssk_mdvs = G.rand_scalar_nonzero(rng);
  key.pub = CmdvsPublicKey{G.exp(G.generator(), key.ssk_sig), G.exp(G.generator(), key.ssk_mdvs)};
  return key;
}

// Verifier keys are plain MDVS verifier keys.
inline MdvsKeyPair cmdvs_verkeygen(const Group& G, Rng& rng) { return mdvs_keygen(G, rng); }

namespace detail {

inline Bytes cmdvs_pub_encode(const Group& G, const CmdvsPublicKey& pub) {
  Bytes out = G.encode(pub.spk_sig);
  append(out, G.encode(pub.spk_mdvs));
  return out;
}

// (spk_i, sigma_MDVS) — the message the Schnorr layer signs, and the prefix
// of the PRF inputs.
inline Bytes cmdvs_sig_msg(const Group& G, const CmdvsPublicKey& pub, const MdvsSignature& inner) {
  Bytes out = cmdvs_pub_encode(G, pub);
  append(out, mdvs_sig_encode(G, inner));
  return out;
}

// (spk_i, {vpk_j}, sigma_Sig) — the committed tuple.
inline Bytes cmdvs_commit_msg(const Group& G, const CmdvsPublicKey& pub,
                              const std::vector<GroupElem>& vpks_sorted, const SchnorrSig& sig) {
  Bytes out = cmdvs_pub_encode(G, pub);
  append_u32be(out, static_cast<uint32_t>(vpks_sorted.size()));
  for (const auto& v : vpks_sorted) append(out, G.encode(v));
  append(out, schnorr_sig_encode(G, sig));
  return out;
}

inline Bytes cmdvs_prf_input(const Bytes& sig_msg, uint8_t tag_byte) {
  Bytes in = sig_msg;
  in.push_back(tag_byte);
  return in;
}

}  // namespace detail

inline CmdvsSignature cmdvs_sign(const Group& G, const CmdvsSignerKey& key,
                                 std::vector<GroupElem> vpks, BytesView m, Rng& rng) {
  MdvsSignature inner = mdvs_sign(G, key.ssk_mdvs, key.pub.spk_mdvs, vpks, m, rng);
  Bytes base = detail::cmdvs_sig_msg(G, key.pub, inner);
  Bytes r_sig = prf_eval(key.k, detail::cmdvs_prf_input(base, 0x00));
  SchnorrSig sigma_sig = schnorr_sign(G, key.ssk_sig, base, r_sig);
  Bytes r_commit = prf_eval(key.k, detail::cmdvs_prf_input(base, 0x01));
  auto sorted = sorted_by_encoding(G, std::move(vpks));
  Commitment com = commit(detail::cmdvs_commit_msg(G, key.pub, sorted, sigma_sig), r_commit);
  return CmdvsSignature{inner, com};
}

// Delegates to the MDVS; the commitment is not looked at here.
inline bool cmdvs_verify(const Group& G, const CmdvsPublicKey& pub, const Scalar& vsk,
                         std::vector<GroupElem> vpks, BytesView m, const CmdvsSignature& sig) {
  return mdvs_verify(G, pub.spk_mdvs, vsk, std::move(vpks), m, sig.inner);
}

// Recompute the deterministic opening; a signature this key did not produce
// fails the decommitment and yields nothing.
inline std::optional<CmdvsClaim> cmdvs_claim(const Group& G, const CmdvsSignerKey& key,
                                             std::vector<GroupElem> vpks, const CmdvsSignature& sig) {
  Bytes base = detail::cmdvs_sig_msg(G, key.pub, sig.inner);
  Bytes r_sig = prf_eval(key.k, detail::cmdvs_prf_input(base, 0x00));
  SchnorrSig sigma_sig = schnorr_sign(G, key.ssk_sig, base, r_sig);
  Bytes r_commit = prf_eval(key.k, detail::cmdvs_prf_input(base, 0x01));
  auto sorted = sorted_by_encoding(G, std::move(vpks));
  if (!decommit(sig.com, r_commit, detail::cmdvs_commit_msg(G, key.pub, sorted, sigma_sig)))
    return std::nullopt;
  return CmdvsClaim{r_commit, sigma_sig};
}

inline bool cmdvs_clm_ver(const Group& G, const CmdvsPublicKey& pub, std::vector<GroupElem> vpks,
                          const CmdvsSignature& sig, const CmdvsClaim& claim) {
  if (claim.r_commit.size() != 32) return false;
  auto sorted = sorted_by_encoding(G, std::move(vpks));
  Commitment com = commit(detail::cmdvs_commit_msg(G, pub, sorted, claim.sigma_sig), claim.r_commit);
  if (!(com == sig.com)) return false;
  return schnorr_verify(G, pub.spk_sig, detail::cmdvs_sig_msg(G, pub, sig.inner), claim.sigma_sig);
}

// Serialization: inner scalars followed by the 32-byte commitment.
inline size_t cmdvs_sig_bits(const Group& G) { return mdvs_sig_bits(G) + 256; }

inline Bytes cmdvs_sig_encode(const Group& G, const CmdvsSignature& sig) {
  Bytes out = mdvs_sig_encode(G, sig.inner);
  append(out, sig.com.com);
  return out;
}

inline CmdvsSignature cmdvs_sig_decode(const Group& G, BytesView b) {
  size_t inner_len = 4 * G.scalar_bytes();
  if (b.size() != inner_len + 32) throw WrongLength("bad CMDVS signature length");
  MdvsSignature inner = mdvs_sig_decode(G, b.first(inner_len));
  return CmdvsSignature{inner, Commitment{Bytes(b.begin() + inner_len, b.end())}};
}

inline BitString cmdvs_sig_to_bits(const Group& G, const CmdvsSignature& sig) {
  return BitString::from_packed(cmdvs_sig_encode(G, sig), cmdvs_sig_bits(G));
}

inline CmdvsSignature cmdvs_bits_to_sig(const Group& G, const BitString& bits) {
  if (bits.size() != cmdvs_sig_bits(G)) throw WrongLength("bad CMDVS signature bit length");
  return cmdvs_sig_decode(G, bits.to_packed());
}

}  // namespace mddw
