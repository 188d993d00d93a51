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

#include "mddw/bits.hpp"
#include "mddw/group.hpp"

namespace mddw {

// Hash-valued BLS: sigma = H'(e(h^sk, g)) for h = H(m). Both sides are
// computed as e(h, g)^x resp. e(h, pk) via bilinearity, which yields the
// identical group element.

inline constexpr size_t kBlsDefaultBits = 128;

struct BlsSig {
  BitString s;
  bool operator==(const BlsSig&) const = default;
};

inline BitString bls_digest(const Group& G, const GtElem& u, size_t l_bits) {
  Bytes d = xof("MDDW/BLSH'", G.gt_encode(u), (l_bits + 7) / 8);
  return BitString::from_packed(d, l_bits);
}

inline BlsSig bls_sign(const Group& G, const Scalar& sk, BytesView msg, size_t l_bits = kBlsDefaultBits) {
  GroupElem h = G.hash_to_group("MDDW/BLSH", msg);
  GtElem u = G.gt_exp(G.pair(h, G.generator()), sk);  // = e(h^sk, g)
  return BlsSig{bls_digest(G, u, l_bits)};
}

inline bool bls_verify(const Group& G, const GroupElem& pk, BytesView msg, const BlsSig& sig) {
  GroupElem h = G.hash_to_group("MDDW/BLSH", msg);
  GtElem u = G.pair(h, pk);
  return bls_digest(G, u, sig.s.size()) == sig.s;
}

}  // namespace mddw
