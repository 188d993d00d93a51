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

#include <algorithm>
#include <memory>
#include <string>
#include <string_view>

#include "mddw/bytes.hpp"
#include "mddw/detail/ss_curve.hpp"
#include "mddw/rng.hpp"
#include "mddw/xof.hpp"

namespace mddw {

// Three pinned backends:
//
//   toy23   - Z_23^* subgroup of order 11, generator 2. Small enough to
//             brute-force every operation in tests.
//   test16  - order-65521 subgroup of Z_p^* (p = 4294901551 = 2*32775*65521+1).
//             16-bit scalars make end-to-end watermark tests fast.
//   prod128 - order-q subgroup of the supersingular curve y^2 = x^3 + x over
//             a 1024-bit prime p = 4cq - 1, q = 2^255 + 95. Symmetric Tate
//             pairing via the distortion map; carries the DVS/BLS schemes.
enum class GroupId { toy23, test16, prod128 };

inline std::string to_string(GroupId id) {
  switch (id) {
    case GroupId::toy23: return "toy23";
    case GroupId::test16: return "test16";
    case GroupId::prod128: return "prod128";
  }
  throw Error("bad group id");
}

inline GroupId group_id_from_string(const std::string& s) {
  if (s == "toy23") return GroupId::toy23;
  if (s == "test16") return GroupId::test16;
  if (s == "prod128") return GroupId::prod128;
  throw DecodeError("unknown group id: " + s);
}

struct Scalar {
  mpz_class v;
  bool operator==(const Scalar&) const = default;
};

// Multiplicative backends use only `x`; the curve backend uses (x, y, inf).
struct GroupElem {
  mpz_class x, y;
  bool inf = false;
  bool operator==(const GroupElem&) const = default;
};

// Pairing-target element, a + b*i in F_p^2.
struct GtElem {
  mpz_class a, b;
  bool operator==(const GtElem&) const = default;
};

struct GroupParams {
  GroupId group_id;
  mpz_class p;  // field prime
  mpz_class q;  // prime subgroup order
  size_t scalar_bytes;
  size_t elem_bytes;
  size_t gt_bytes;  // 0 when no pairing
  bool pairing_available;
};

namespace detail {

inline Bytes mpz_to_be(const mpz_class& v, size_t width) {
  Bytes out(width, 0);
  size_t count = 0;
  mpz_export(out.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
  if (count > width) throw Error("value does not fit encoding width");
  if (count < width) {
    // mpz_export writes from the front; shift right for fixed width.
    std::copy_backward(out.begin(), out.begin() + static_cast<long>(count), out.begin() + static_cast<long>(width));
    std::fill(out.begin(), out.begin() + static_cast<long>(width - count), 0);
  }
  return out;
}

inline mpz_class be_to_mpz(BytesView b) {
  mpz_class v;
  mpz_import(v.get_mpz_t(), b.size(), 1, 1, 1, 0, b.data());
  return v;
}

}  // namespace detail

// Prime-order group with scalar field, canonical fixed-width serialization,
// hash-to-scalar / hash-to-group, and (on prod128) a symmetric pairing.
// All operations are pure; instances are immutable singletons.
class Group {
 public:
  static const Group& get(GroupId id) {
    switch (id) {
      case GroupId::toy23: {
        static const Group g(GroupId::toy23, "23", "11", "2");
        return g;
      }
      case GroupId::test16: {
        static const Group g(GroupId::test16, "4294901551", "65521", "4210189872");
        return g;
      }
      case GroupId::prod128: {
        static const Group g = make_prod128();
        return g;
      }
    }
    throw Error("bad group id");
  }

  const GroupParams& params() const { return params_; }
  GroupId id() const { return params_.group_id; }
  const mpz_class& order() const { return params_.q; }
  bool pairing_available() const { return params_.pairing_available; }
  size_t scalar_bytes() const { return params_.scalar_bytes; }
  size_t scalar_bits() const { return params_.scalar_bytes * 8; }
  size_t elem_bytes() const { return params_.elem_bytes; }

  // ---- scalar field (mod q) ----

  Scalar s_zero() const { return Scalar{0}; }
  Scalar s_from_u64(uint64_t v) const { return reduce(mpz_class(static_cast<unsigned long>(v))); }
  Scalar s_add(const Scalar& a, const Scalar& b) const { return reduce(a.v + b.v); }
  Scalar s_sub(const Scalar& a, const Scalar& b) const { return reduce(a.v - b.v); }
  Scalar s_mul(const Scalar& a, const Scalar& b) const { return reduce(a.v * b.v); }
  Scalar s_neg(const Scalar& a) const { return reduce(-a.v); }

  Scalar s_inv(const Scalar& a) const {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.v.get_mpz_t(), params_.q.get_mpz_t()) == 0)
      throw Error("scalar has no inverse");
    return Scalar{r};
  }

  Scalar rand_scalar(Rng& rng) const {
    // Rejection sampling: exactly uniform over [0, q).
    size_t bits = mpz_sizeinbase(params_.q.get_mpz_t(), 2);
    size_t nbytes = (bits + 7) / 8;
    uint8_t mask = bits % 8 == 0 ? 0xff : static_cast<uint8_t>((1u << bits % 8) - 1);
    for (;;) {
      Bytes buf = rng.bytes(nbytes);
      buf[0] &= mask;
      mpz_class v = detail::be_to_mpz(buf);
      if (v < params_.q) return Scalar{v};
    }
  }

  Scalar rand_scalar_nonzero(Rng& rng) const {
    for (;;) {
      Scalar s = rand_scalar(rng);
      if (s.v != 0) return s;
    }
  }

  Bytes s_encode(const Scalar& s) const { return detail::mpz_to_be(s.v, params_.scalar_bytes); }

  Scalar s_decode(BytesView b) const {
    if (b.size() != params_.scalar_bytes) throw DecodeError("bad scalar width");
    mpz_class v = detail::be_to_mpz(b);
    if (v >= params_.q) throw DecodeError("scalar not reduced");
    return Scalar{v};
  }

  // Wide reduction from 2x the scalar width, zero rejected by re-hashing
  // with an incremented counter byte. Output is uniform-ish over [1, q).
  Scalar hash_to_scalar(std::string_view tag, BytesView msg) const {
    Bytes in(msg.begin(), msg.end());
    in.push_back(0);
    for (int ctr = 0; ctr < 256; ctr++) {
      in.back() = static_cast<uint8_t>(ctr);
      Bytes d = xof(tag, in, 2 * params_.scalar_bytes);
      mpz_class v = detail::be_to_mpz(d) % params_.q;
      if (v != 0) return Scalar{v};
    }
    throw Error("hash_to_scalar rejection bound exceeded");
  }

  // ---- group ----

  GroupElem generator() const {
    if (curve_) return GroupElem{curve_->gen().x, curve_->gen().y, false};
    return GroupElem{g_, 0, false};
  }

  GroupElem identity() const {
    if (curve_) return GroupElem{0, 0, true};
    return GroupElem{1, 0, false};
  }

  bool is_identity(const GroupElem& e) const {
    return curve_ ? e.inf : e.x == 1;
  }

  GroupElem exp(const GroupElem& base, const Scalar& e) const {
    if (curve_) {
      auto r = curve_->mul_point(to_pt(base), e.v);
      return from_pt(r);
    }
    mpz_class r;
    mpz_powm(r.get_mpz_t(), base.x.get_mpz_t(), e.v.get_mpz_t(), params_.p.get_mpz_t());
    return GroupElem{r, 0, false};
  }

  GroupElem mul(const GroupElem& a, const GroupElem& b) const {
    if (curve_) return from_pt(curve_->add(to_pt(a), to_pt(b)));
    mpz_class r;
    mpz_mul(r.get_mpz_t(), a.x.get_mpz_t(), b.x.get_mpz_t());
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), params_.p.get_mpz_t());
    return GroupElem{r, 0, false};
  }

  GroupElem invert(const GroupElem& a) const {
    if (curve_) return from_pt(curve_->neg(to_pt(a)));
    mpz_class r;
    mpz_invert(r.get_mpz_t(), a.x.get_mpz_t(), params_.p.get_mpz_t());
    return GroupElem{r, 0, false};
  }

  GroupElem hash_to_group(std::string_view tag, BytesView msg) const {
    return exp(generator(), hash_to_scalar(tag, msg));
  }

  Bytes encode(const GroupElem& e) const {
    if (curve_) {
      Bytes out(params_.elem_bytes, 0);
      if (e.inf) return out;  // 0x00 prefix, zero body
      out[0] = mpz_tstbit(e.y.get_mpz_t(), 0) ? 0x03 : 0x02;
      Bytes xb = detail::mpz_to_be(e.x, params_.elem_bytes - 1);
      std::copy(xb.begin(), xb.end(), out.begin() + 1);
      return out;
    }
    return detail::mpz_to_be(e.x, params_.elem_bytes);
  }

  GroupElem decode(BytesView b) const {
    if (b.size() != params_.elem_bytes) throw DecodeError("bad element width");
    if (curve_) {
      uint8_t prefix = b[0];
      mpz_class x = detail::be_to_mpz(b.subspan(1));
      if (prefix == 0x00) {
        if (x != 0) throw DecodeError("bad infinity encoding");
        return identity();
      }
      if (prefix != 0x02 && prefix != 0x03) throw DecodeError("bad point prefix");
      if (x >= params_.p) throw DecodeError("x out of range");
      mpz_class z = curve_->mod(curve_->mul(curve_->mul(x, x), x) + x);
      auto y = curve_->sqrt(z);
      if (!y) throw DecodeError("x not on curve");
      mpz_class yv = *y;
      bool odd = mpz_tstbit(yv.get_mpz_t(), 0) != 0;
      if (odd != (prefix == 0x03)) yv = curve_->mod(-yv);
      detail::EcPoint pt{x, yv, false};
      if (!curve_->in_subgroup(pt)) throw DecodeError("point not in prime-order subgroup");
      return from_pt(pt);
    }
    mpz_class v = detail::be_to_mpz(b);
    if (v == 0 || v >= params_.p) throw DecodeError("element out of range");
    mpz_class r;
    mpz_powm(r.get_mpz_t(), v.get_mpz_t(), params_.q.get_mpz_t(), params_.p.get_mpz_t());
    if (r != 1) throw DecodeError("element not in prime-order subgroup");
    return GroupElem{v, 0, false};
  }

  // ---- pairing ----

  GtElem pair(const GroupElem& a, const GroupElem& b) const {
    require_pairing();
    auto r = curve_->pair(to_pt(a), to_pt(b));
    return GtElem{r.a, r.b};
  }

  GtElem gt_identity() const {
    require_pairing();
    return GtElem{1, 0};
  }

  GtElem gt_mul(const GtElem& u, const GtElem& v) const {
    require_pairing();
    auto r = curve_->f2mul({u.a, u.b}, {v.a, v.b});
    return GtElem{r.a, r.b};
  }

  GtElem gt_exp(const GtElem& u, const Scalar& e) const {
    require_pairing();
    auto r = curve_->f2pow({u.a, u.b}, e.v);
    return GtElem{r.a, r.b};
  }

  Bytes gt_encode(const GtElem& u) const {
    require_pairing();
    Bytes out = detail::mpz_to_be(u.a, params_.gt_bytes / 2);
    Bytes bb = detail::mpz_to_be(u.b, params_.gt_bytes / 2);
    append(out, bb);
    return out;
  }

  GtElem gt_decode(BytesView b) const {
    require_pairing();
    if (b.size() != params_.gt_bytes) throw DecodeError("bad gt width");
    size_t half = params_.gt_bytes / 2;
    mpz_class a = detail::be_to_mpz(b.first(half));
    mpz_class bb = detail::be_to_mpz(b.subspan(half));
    if (a >= params_.p || bb >= params_.p) throw DecodeError("gt component out of range");
    return GtElem{a, bb};
  }

 private:
  Group(GroupId id, const char* p, const char* q, const char* g)
      : g_(mpz_class(g)) {
    params_.group_id = id;
    params_.p = mpz_class(p);
    params_.q = mpz_class(q);
    params_.scalar_bytes = (mpz_sizeinbase(params_.q.get_mpz_t(), 2) + 7) / 8;
    params_.elem_bytes = (mpz_sizeinbase(params_.p.get_mpz_t(), 2) + 7) / 8;
    params_.gt_bytes = 0;
    params_.pairing_available = false;
  }

  Group(GroupId id, mpz_class p, mpz_class q, mpz_class gx, mpz_class gy) {
    params_.group_id = id;
    params_.p = p;
    params_.q = q;
    params_.scalar_bytes = (mpz_sizeinbase(params_.q.get_mpz_t(), 2) + 7) / 8;
    params_.elem_bytes = 1 + (mpz_sizeinbase(params_.p.get_mpz_t(), 2) + 7) / 8;
    params_.gt_bytes = 2 * ((mpz_sizeinbase(params_.p.get_mpz_t(), 2) + 7) / 8);
    params_.pairing_available = true;
    curve_ = std::make_unique<detail::SsCurve>(std::move(p), std::move(q), std::move(gx), std::move(gy));
  }

  static Group make_prod128() {
    mpz_class q("800000000000000000000000000000000000000000000000000000000000005f", 16);
    mpz_class p(
        "8000000000000000000000000000000000000000000000000000000000000000"
        "0000000000000000000000000000000000000000000000000000000000000000"
        "00000000000000000000000000000000000000000000000000000000000000ef"
        "ffffffffffffffffffffffffffffffffffffffffffffffffffffffffd929fe17",
        16);
    mpz_class gx(
        "7b9d01b2137d84846cbb081cab005284a3c3fdfd320b2e910006dabbef4f95e0"
        "9870b6d5b8df5458b1fac3e983152d4702dd724f1cbe778e1ba7166625b1ff8d"
        "dff6f6ca890bbfe37e12c0c087f25c1aafdedc73f3773f74d385f857e7e2060c"
        "66c21ffe96b9cc393a1b8d80757a4d3a4961209fdd9ad9241f2be5a025e18921",
        16);
    mpz_class gy(
        "2be7de4dcee9c389b7b8a449d037c0426216ada7d053ec4b803802eff719f38d"
        "13235888bb9d60966b7f883233adeb8c217b83ec9014455b7c841a3e1a27972e"
        "32bfd66498e66860d4b940a1fcc464bf8036d3339d38179216bd56dd5e5f95aa"
        "a673c888daa62ebd47838f9467d1dcd63d7187b517c5c233e3bd87704cd46ed2",
        16);
    return Group(GroupId::prod128, std::move(p), std::move(q), std::move(gx), std::move(gy));
  }

  void require_pairing() const {
    if (!params_.pairing_available)
      throw PairingUnavailable("no pairing on group " + to_string(params_.group_id));
  }

  detail::EcPoint to_pt(const GroupElem& e) const {
    return detail::EcPoint{e.x, e.y, e.inf};
  }
  GroupElem from_pt(const detail::EcPoint& p) const {
    return GroupElem{p.x, p.y, p.inf};
  }

  Scalar reduce(const mpz_class& v) const {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), params_.q.get_mpz_t());
    return Scalar{r};
  }

  GroupParams params_;
  mpz_class g_;  // generator value for multiplicative backends
  std::unique_ptr<detail::SsCurve> curve_;
};

// Canonical verifier-set order: sort by public-key encoding so that
// sign/verify/forge agree regardless of caller ordering.
inline std::vector<GroupElem> sorted_by_encoding(const Group& G, std::vector<GroupElem> elems) {
  std::sort(elems.begin(), elems.end(), [&](const GroupElem& a, const GroupElem& b) {
    return G.encode(a) < G.encode(b);
  });
  return elems;
}

}  // namespace mddw
