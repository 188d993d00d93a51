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

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "mddw/errors.hpp"

namespace mddw::detail {

// Supersingular curve E: y^2 = x^3 + x over F_p with p ≡ 3 (mod 4), so
// #E(F_p) = p + 1 and i = sqrt(-1) lives in F_p^2 = F_p[i]. The distortion
// map φ(x, y) = (-x, iy) turns the reduced Tate pairing on the order-q
// subgroup into a symmetric bilinear map e: G × G → μ_q ⊂ F_p^2.

struct EcPoint {
  mpz_class x, y;
  bool inf = true;
  bool operator==(const EcPoint&) const = default;
};

struct Fp2 {
  mpz_class a, b;  // a + b*i
  bool operator==(const Fp2&) const = default;
};

class SsCurve {
 public:
  SsCurve(mpz_class p, mpz_class q, mpz_class gx, mpz_class gy)
      : p_(std::move(p)), q_(std::move(q)) {
    gen_ = EcPoint{std::move(gx), std::move(gy), false};
    tate_exp_ = (p_ + 1) / q_;  // hard part of (p^2-1)/q after the p-1 step
    // fixed-base table: gen_pows_[i] = 2^i * G
    size_t qbits = mpz_sizeinbase(q_.get_mpz_t(), 2);
    gen_pows_.reserve(qbits);
    EcPoint t = gen_;
    for (size_t i = 0; i < qbits; i++) {
      gen_pows_.push_back(t);
      t = add(t, t);
    }
  }

  const mpz_class& p() const { return p_; }
  const mpz_class& q() const { return q_; }
  const EcPoint& gen() const { return gen_; }

  // ---- F_p helpers ----

  mpz_class mod(const mpz_class& v) const {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t());
    return r;
  }
  mpz_class mul(const mpz_class& a, const mpz_class& b) const { return mod(a * b); }
  mpz_class inv(const mpz_class& a) const {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p_.get_mpz_t()) == 0)
      throw Error("inversion of zero in F_p");
    return r;
  }

  // p ≡ 3 (mod 4): candidate root is z^((p+1)/4); caller checks it squares back.
  std::optional<mpz_class> sqrt(const mpz_class& z) const {
    mpz_class e = (p_ + 1) / 4, r;
    mpz_powm(r.get_mpz_t(), z.get_mpz_t(), e.get_mpz_t(), p_.get_mpz_t());
    if (mul(r, r) != mod(z)) return std::nullopt;
    return r;
  }

  // ---- group law ----

  bool on_curve(const EcPoint& P) const {
    if (P.inf) return true;
    mpz_class lhs = mul(P.y, P.y);
    mpz_class rhs = mod(mul(mul(P.x, P.x), P.x) + P.x);
    return lhs == rhs;
  }

  EcPoint neg(const EcPoint& P) const {
    if (P.inf) return P;
    return EcPoint{P.x, mod(-P.y), false};
  }

  EcPoint add(const EcPoint& P, const EcPoint& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    mpz_class lam;
    if (P.x == Q.x) {
      if (mod(P.y + Q.y) == 0) return EcPoint{};
      lam = mul(mod(3 * mul(P.x, P.x) + 1), inv(mod(2 * P.y)));
    } else {
      lam = mul(mod(Q.y - P.y), inv(mod(Q.x - P.x)));
    }
    mpz_class x3 = mod(mul(lam, lam) - P.x - Q.x);
    mpz_class y3 = mod(mul(lam, P.x - x3) - P.y);
    return EcPoint{x3, y3, false};
  }

  // Scalar multiplication in Jacobian coordinates.
  EcPoint mul_point(const EcPoint& P, const mpz_class& k) const {
    mpz_class e;
    mpz_mod(e.get_mpz_t(), k.get_mpz_t(), q_.get_mpz_t());
    if (P.inf || e == 0) return EcPoint{};
    if (P == gen_) return mul_gen(e);
    Jac R;  // infinity
    Jac A = to_jac(P);
    for (long i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0; i--) {
      R = jdbl(R);
      if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) R = jadd(R, A);
    }
    return from_jac(R);
  }

  // Fixed-base variant over the precomputed doubling table (e already
  // reduced and nonzero).
  EcPoint mul_gen(const mpz_class& e) const {
    Jac R;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = 0; i < bits; i++) {
      if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) R = jadd_affine(R, gen_pows_[i]);
    }
    return from_jac(R);
  }

  bool in_subgroup(const EcPoint& P) const {
    return on_curve(P) && mul_point(P, q_).inf;
  }

  // ---- F_p^2 arithmetic ----

  Fp2 one() const { return Fp2{1, 0}; }

  Fp2 f2mul(const Fp2& u, const Fp2& v) const {
    // Karatsuba: 3 base multiplications.
    mpz_class t0 = mul(u.a, v.a);
    mpz_class t1 = mul(u.b, v.b);
    mpz_class t2 = mul(u.a + u.b, v.a + v.b);
    return Fp2{mod(t0 - t1), mod(t2 - t0 - t1)};
  }

  Fp2 f2sq(const Fp2& u) const {
    mpz_class t0 = mul(mod(u.a + u.b), mod(u.a - u.b));
    mpz_class t1 = mul(u.a, u.b);
    return Fp2{t0, mod(2 * t1)};
  }

  Fp2 f2conj(const Fp2& u) const { return Fp2{u.a, mod(-u.b)}; }

  Fp2 f2inv(const Fp2& u) const {
    mpz_class n = mod(mul(u.a, u.a) + mul(u.b, u.b));
    mpz_class ni = inv(n);
    return Fp2{mul(u.a, ni), mod(-mul(u.b, ni))};
  }

  Fp2 f2pow(const Fp2& u, const mpz_class& e) const {
    Fp2 r = one();
    for (long i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0; i--) {
      r = f2sq(r);
      if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) r = f2mul(r, u);
    }
    return r;
  }

  // ---- pairing ----

  // Reduced Tate pairing e(P, φ(Q)). Vertical lines evaluate inside F_p and
  // are discarded; the final exponentiation kills F_p^* anyway. Each Miller
  // step shares one slope inversion between the point update and the line.
  Fp2 pair(const EcPoint& P, const EcPoint& Q) const {
    if (P.inf || Q.inf) return one();
    Fp2 f = one();
    EcPoint T = P;
    long top = static_cast<long>(mpz_sizeinbase(q_.get_mpz_t(), 2)) - 2;
    for (long i = top; i >= 0; i--) {
      f = f2sq(f);
      miller_dbl(T, Q, f);
      if (mpz_tstbit(q_.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
        miller_add(T, P, Q, f);
      }
    }
    return final_exp(f);
  }

 private:
  struct Jac {
    mpz_class X, Y, Z;  // Z == 0 means infinity
  };

  Jac to_jac(const EcPoint& P) const { return Jac{P.x, P.y, 1}; }

  EcPoint from_jac(const Jac& P) const {
    if (P.Z == 0) return EcPoint{};
    mpz_class zi = inv(P.Z);
    mpz_class zi2 = mul(zi, zi);
    return EcPoint{mul(P.X, zi2), mul(P.Y, mul(zi2, zi)), false};
  }

  Jac jdbl(const Jac& P) const {
    if (P.Z == 0 || P.Y == 0) return Jac{1, 1, 0};
    mpz_class XX = mul(P.X, P.X);
    mpz_class YY = mul(P.Y, P.Y);
    mpz_class YYYY = mul(YY, YY);
    mpz_class ZZ = mul(P.Z, P.Z);
    mpz_class t = mod(P.X + YY);
    mpz_class S = mod(2 * mod(mul(t, t) - XX - YYYY));
    mpz_class M = mod(3 * XX + mul(ZZ, ZZ));  // a = 1
    mpz_class X3 = mod(mul(M, M) - 2 * S);
    mpz_class Y3 = mod(mul(M, S - X3) - 8 * YYYY);
    mpz_class u = mod(P.Y + P.Z);
    mpz_class Z3 = mod(mul(u, u) - YY - ZZ);
    return Jac{X3, Y3, Z3};
  }

  // Mixed addition, Q affine (Z = 1).
  Jac jadd_affine(const Jac& P, const EcPoint& Q) const {
    if (Q.inf) return P;
    if (P.Z == 0) return Jac{Q.x, Q.y, 1};
    mpz_class Z1Z1 = mul(P.Z, P.Z);
    mpz_class U2 = mul(Q.x, Z1Z1);
    mpz_class S2 = mul(Q.y, mul(P.Z, Z1Z1));
    if (P.X == U2) {
      if (P.Y != S2) return Jac{1, 1, 0};
      return jdbl(P);
    }
    mpz_class H = mod(U2 - P.X);
    mpz_class HH = mul(H, H);
    mpz_class I = mod(4 * HH);
    mpz_class J = mul(H, I);
    mpz_class r = mod(2 * (S2 - P.Y));
    mpz_class V = mul(P.X, I);
    mpz_class X3 = mod(mul(r, r) - J - 2 * V);
    mpz_class Y3 = mod(mul(r, V - X3) - 2 * mul(P.Y, J));
    mpz_class t = mod(P.Z + H);
    mpz_class Z3 = mod(mul(t, t) - Z1Z1 - HH);
    return Jac{X3, Y3, Z3};
  }

  Jac jadd(const Jac& P, const Jac& Q) const {
    if (P.Z == 0) return Q;
    if (Q.Z == 0) return P;
    mpz_class Z1Z1 = mul(P.Z, P.Z);
    mpz_class Z2Z2 = mul(Q.Z, Q.Z);
    mpz_class U1 = mul(P.X, Z2Z2);
    mpz_class U2 = mul(Q.X, Z1Z1);
    mpz_class S1 = mul(P.Y, mul(Q.Z, Z2Z2));
    mpz_class S2 = mul(Q.Y, mul(P.Z, Z1Z1));
    if (U1 == U2) {
      if (S1 != S2) return Jac{1, 1, 0};
      return jdbl(P);
    }
    mpz_class H = mod(U2 - U1);
    mpz_class I = mod(4 * mul(H, H));
    mpz_class J = mul(H, I);
    mpz_class r = mod(2 * (S2 - S1));
    mpz_class V = mul(U1, I);
    mpz_class X3 = mod(mul(r, r) - J - 2 * V);
    mpz_class Y3 = mod(mul(r, V - X3) - 2 * mul(S1, J));
    mpz_class w = mod(P.Z + Q.Z);
    mpz_class Z3 = mul(mod(mul(w, w) - Z1Z1 - Z2Z2), H);
    return Jac{X3, Y3, Z3};
  }

  // Tangent line at T evaluated at φ(Q) = (-x_Q, i*y_Q), folded into f;
  // T is replaced by 2T. The line is l = (λ(x_Q + x_T) - y_T) + y_Q * i.
  void miller_dbl(EcPoint& T, const EcPoint& Q, Fp2& f) const {
    if (T.inf) return;
    if (T.y == 0) {  // vertical tangent; factor lies in F_p
      T = EcPoint{};
      return;
    }
    mpz_class lam = mul(mod(3 * mul(T.x, T.x) + 1), inv(mod(2 * T.y)));
    f = f2mul(f, Fp2{mod(mul(lam, Q.x + T.x) - T.y), Q.y});
    mpz_class x3 = mod(mul(lam, lam) - 2 * T.x);
    mpz_class y3 = mod(mul(lam, T.x - x3) - T.y);
    T = EcPoint{x3, y3, false};
  }

  // Chord through T and P evaluated at φ(Q), folded into f; T becomes T + P.
  void miller_add(EcPoint& T, const EcPoint& P, const EcPoint& Q, Fp2& f) const {
    if (P.inf) return;
    if (T.inf) {
      T = P;
      return;
    }
    if (T.x == P.x) {
      if (mod(T.y + P.y) == 0) {  // vertical chord, T + P = O
        T = EcPoint{};
        return;
      }
      miller_dbl(T, Q, f);
      return;
    }
    mpz_class lam = mul(mod(P.y - T.y), inv(mod(P.x - T.x)));
    f = f2mul(f, Fp2{mod(mul(lam, Q.x + T.x) - T.y), Q.y});
    mpz_class x3 = mod(mul(lam, lam) - T.x - P.x);
    mpz_class y3 = mod(mul(lam, T.x - x3) - T.y);
    T = EcPoint{x3, y3, false};
  }

  // f^((p^2-1)/q); the p-1 step is conj(f)/f, the rest is a plain power.
  Fp2 final_exp(const Fp2& f) const {
    Fp2 g = f2mul(f2conj(f), f2inv(f));
    return f2pow(g, tate_exp_);
  }

  mpz_class p_, q_;
  mpz_class tate_exp_;
  EcPoint gen_;
  std::vector<EcPoint> gen_pows_;
};

}  // namespace mddw::detail
