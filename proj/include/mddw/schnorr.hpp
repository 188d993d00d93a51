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

#include "mddw/group.hpp"

namespace mddw {

// Schnorr signatures with caller-supplied randomness. The nonce is derived
// from (rand32, msg, pk), so signing is fully deterministic given its
// inputs; the claimable-MDVS transform recomputes signatures byte-exactly.

struct SchnorrKeyPair {
  Scalar sk;
  GroupElem pk;
};

struct SchnorrSig {
  Scalar c, z;
  bool operator==(const SchnorrSig&) const = default;
};

inline SchnorrKeyPair schnorr_keygen(const Group& G, Rng& rng) {
  Scalar sk = G.rand_scalar_nonzero(rng);
  return SchnorrKeyPair{sk, G.exp(G.generator(), sk)};
}

inline Bytes schnorr_sig_encode(const Group& G, const SchnorrSig& sig) {
  Bytes out = G.s_encode(sig.c);
  append(out, G.s_encode(sig.z));
  return out;
}

inline SchnorrSig schnorr_sig_decode(const Group& G, BytesView b) {
  size_t w = G.scalar_bytes();
  if (b.size() != 2 * w) throw WrongLength("bad Schnorr signature length");
  return SchnorrSig{G.s_decode(b.first(w)), G.s_decode(b.subspan(w))};
}

inline SchnorrSig schnorr_sign(const Group& G, const Scalar& sk, BytesView msg, BytesView rand32) {
  if (rand32.size() != 32) throw WrongLength("Schnorr signing randomness must be 32 bytes");
  GroupElem pk = G.exp(G.generator(), sk);
  Bytes pk_enc = G.encode(pk);

  Bytes nonce_in(rand32.begin(), rand32.end());
  append(nonce_in, msg);
  append(nonce_in, pk_enc);
  Scalar k = G.hash_to_scalar("MDDW/NONCE", nonce_in);

  GroupElem R = G.exp(G.generator(), k);
  Bytes c_in = G.encode(R);
  append(c_in, pk_enc);
  append(c_in, msg);
  Scalar c = G.hash_to_scalar("MDDW/SCH", c_in);
  Scalar z = G.s_sub(k, G.s_mul(c, sk));
  return SchnorrSig{c, z};
}

inline bool schnorr_verify(const Group& G, const GroupElem& pk, BytesView msg, const SchnorrSig& sig) {
  // R' = pk^c * g^z; accept iff c binds (R', pk, msg).
  GroupElem R = G.mul(G.exp(pk, sig.c), G.exp(G.generator(), sig.z));
  Bytes c_in = G.encode(R);
  append(c_in, G.encode(pk));
  append(c_in, msg);
  return G.hash_to_scalar("MDDW/SCH", c_in) == sig.c;
}

}  // namespace mddw
