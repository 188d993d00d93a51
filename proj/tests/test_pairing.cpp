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

#include <gtest/gtest.h>

#include "mddw/group.hpp"

namespace mddw {
namespace {

using detail::EcPoint;
using detail::Fp2;
using detail::SsCurve;

// Tiny pairing curve for brute-force checks: p = 12107 = 12*1009 - 1,
// q = 1009, generator found by cofactor clearing.
SsCurve tiny_curve() { return SsCurve(mpz_class(12107), mpz_class(1009), mpz_class(8445), mpz_class(859)); }

// Independent textbook Miller loop in affine coordinates, keeping the
// vertical-line denominators the production code drops. The denominators
// live in F_p, so the final exponentiation must erase the difference.
Fp2 naive_tate(const SsCurve& C, const EcPoint& P, const EcPoint& Q) {
  if (P.inf || Q.inf) return C.one();
  auto line = [&](const EcPoint& T, const EcPoint& S) -> Fp2 {
    // line through T and S (tangent if T == S), evaluated at phi(Q)
    if (T.inf || S.inf) return C.one();
    if (T.x == S.x && C.mod(T.y + S.y) == 0) {
      // vertical: x(phiQ) - x(T) = -x_Q - x_T, an F_p value
      return Fp2{C.mod(-Q.x - T.x), 0};
    }
    mpz_class lam;
    if (T == S) {
      lam = C.mul(C.mod(3 * C.mul(T.x, T.x) + 1), C.inv(C.mod(2 * T.y)));
    } else {
      lam = C.mul(C.mod(S.y - T.y), C.inv(C.mod(S.x - T.x)));
    }
    return Fp2{C.mod(C.mul(lam, Q.x + T.x) - T.y), Q.y};
  };
  auto vertical = [&](const EcPoint& T) -> Fp2 {
    if (T.inf) return C.one();
    return Fp2{C.mod(-Q.x - T.x), 0};
  };

  Fp2 f = C.one();
  EcPoint T = P;
  const mpz_class& q = C.q();
  long top = static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2)) - 2;
  for (long i = top; i >= 0; i--) {
    EcPoint T2 = C.add(T, T);
    f = C.f2mul(C.f2sq(f), C.f2mul(line(T, T), C.f2inv(vertical(T2))));
    T = T2;
    if (mpz_tstbit(q.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      EcPoint T3 = C.add(T, P);
      f = C.f2mul(f, C.f2mul(line(T, P), C.f2inv(vertical(T3))));
      T = T3;
    }
  }
  mpz_class e = (C.p() * C.p() - 1) / q;
  return C.f2pow(f, e);
}

TEST(TinyCurve, GroupLawAgainstIteratedAddition) {
  SsCurve C = tiny_curve();
  EXPECT_TRUE(C.on_curve(C.gen()));
  EXPECT_TRUE(C.in_subgroup(C.gen()));

  EcPoint acc{};  // infinity
  for (int k = 0; k <= 60; k++) {
    EcPoint viaMul = C.mul_point(C.gen(), mpz_class(k));
    EXPECT_EQ(viaMul, acc) << "k=" << k;
    EXPECT_TRUE(C.on_curve(acc));
    acc = C.add(acc, C.gen());
  }
  EXPECT_TRUE(C.mul_point(C.gen(), C.q()).inf);
}

TEST(TinyCurve, PairingMatchesFrozenReference) {
  // Anchors computed by a third-party implementation (Python/gmpy2).
  SsCurve C = tiny_curve();
  Fp2 e = C.pair(C.gen(), C.gen());
  EXPECT_EQ(e.a, 372);
  EXPECT_EQ(e.b, 3632);

  Fp2 e2 = C.pair(C.mul_point(C.gen(), mpz_class(123)), C.mul_point(C.gen(), mpz_class(777)));
  EXPECT_EQ(e2.a, 3237);
  EXPECT_EQ(e2.b, 1793);
}

TEST(TinyCurve, PairingMatchesNaiveMillerWithDenominators) {
  SsCurve C = tiny_curve();
  Rng rng(99);
  for (int i = 0; i < 25; i++) {
    mpz_class a(1 + rng.below(1008)), b(1 + rng.below(1008));
    EcPoint P = C.mul_point(C.gen(), a);
    EcPoint Q = C.mul_point(C.gen(), b);
    EXPECT_EQ(C.pair(P, Q), naive_tate(C, P, Q));
  }
}

TEST(TinyCurve, BilinearAndNondegenerate) {
  SsCurve C = tiny_curve();
  Fp2 base = C.pair(C.gen(), C.gen());
  EXPECT_NE(base, C.one());
  EXPECT_EQ(C.f2pow(base, C.q()), C.one());  // order divides q
  Rng rng(5);
  for (int i = 0; i < 30; i++) {
    mpz_class a(1 + rng.below(1008)), b(1 + rng.below(1008));
    Fp2 lhs = C.pair(C.mul_point(C.gen(), a), C.mul_point(C.gen(), b));
    EXPECT_EQ(lhs, C.f2pow(base, a * b % C.q()));
    // symmetry
    EXPECT_EQ(lhs, C.pair(C.mul_point(C.gen(), b), C.mul_point(C.gen(), a)));
  }
}

TEST(Prod128, FrozenPairingAnchor) {
  const Group& G = Group::get(GroupId::prod128);
  GtElem e = G.pair(G.generator(), G.generator());
  mpz_class ea(
      "44b5e6c84eea4f7419c40b2caf4a637cf74beccf87f07cb97096348f8869fbdb"
      "75851c411ebb2ddeff9f91adc36adee5933b42be5283e95c6adc9f656cc46346"
      "e525ec4c9bebd846394afd3b302a5ab9b6f86d6b8e2263f3924f6de220eda6db"
      "744316a8012af22789a437a231330684b00f4f43decdc883c70649d95c1632b",
      16);
  mpz_class eb(
      "45ca9b7e67f648b57830156ab1c273dab78371c22b70aaccbaa471f72cc48846"
      "38fd90386557f80e65995b446479b677c69366517cc6463816c15ad01d1b29b9"
      "18704e8b5f81af365d4c078d3d3f81b6dba82f3fee5955121b63edbf6018aeaa"
      "4864ef8ec6e8286ddeef48e55019a9ec49649b19648c6254e41d50ba82079746",
      16);
  EXPECT_EQ(e.a, ea);
  EXPECT_EQ(e.b, eb);
}

TEST(Prod128, BilinearityOverRandomExponents) {
  const Group& G = Group::get(GroupId::prod128);
  GroupElem g = G.generator();
  GtElem base = G.pair(g, g);
  Rng rng(8);
  for (int i = 0; i < 20; i++) {
    Scalar a = G.rand_scalar_nonzero(rng), b = G.rand_scalar_nonzero(rng);
    GtElem lhs = G.pair(G.exp(g, a), G.exp(g, b));
    EXPECT_EQ(lhs, G.gt_exp(base, G.s_mul(a, b)));
  }
  // pair(exp(g,2), g) = pair(g, exp(g,2))
  EXPECT_EQ(G.pair(G.exp(g, G.s_from_u64(2)), g), G.pair(g, G.exp(g, G.s_from_u64(2))));
}

TEST(Prod128, DegenerateInputsAndGtCodec) {
  const Group& G = Group::get(GroupId::prod128);
  EXPECT_EQ(G.pair(G.generator(), G.identity()), G.gt_identity());
  EXPECT_EQ(G.pair(G.identity(), G.generator()), G.gt_identity());
  GtElem e = G.pair(G.generator(), G.generator());
  EXPECT_EQ(G.gt_decode(G.gt_encode(e)), e);
  EXPECT_EQ(G.gt_encode(e).size(), G.params().gt_bytes);
}

TEST(Pairing, UnavailableOnNonPairingGroups) {
  for (GroupId id : {GroupId::toy23, GroupId::test16}) {
    const Group& G = Group::get(id);
    EXPECT_THROW((void)G.pair(G.generator(), G.generator()), PairingUnavailable);
    EXPECT_THROW((void)G.gt_identity(), PairingUnavailable);
  }
}

TEST(Prod128, JacobianMatchesAffineLadder) {
  const Group& G = Group::get(GroupId::prod128);
  SsCurve C = tiny_curve();
  // cross-check the Jacobian ladder against repeated affine addition
  EcPoint g = C.gen();
  EcPoint sum{};
  for (int k = 0; k <= 25; k++) {
    EXPECT_EQ(C.mul_point(g, mpz_class(k)), sum);
    sum = C.add(sum, g);
  }
  // non-generator fixed base on prod128 exercises the generic ladder path
  Rng rng(4);
  Scalar a = G.rand_scalar_nonzero(rng);
  GroupElem h = G.exp(G.generator(), a);
  Scalar b = G.rand_scalar_nonzero(rng);
  EXPECT_EQ(G.exp(h, b), G.exp(G.generator(), G.s_mul(a, b)));
}

}  // namespace
}  // namespace mddw
