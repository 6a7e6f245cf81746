// Copyright 2026 The RBE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rbe/algebra/type_a.h"

#include <openssl/evp.h>

#include <array>

namespace rbe::detail {

namespace {

TypeAParams MakeA80() {
  TypeAParams a;
  a.name = "type-a-160";
  a.security_level = 80;
  a.p = mpz_class(
      "8780710799663312522437781984754049815806883199414208211028653399266475"
      "6308802229570786251794226622214231558587695823174592777133673174813249"
      "25129998224791");
  a.r = mpz_class("730750818665451621361119245571504901405976559617");
  a.h = mpz_class(
      "1201601226489114607938882136674053420480295440125131182291961513104720"
      "7289359704531102844802183906537786776");
  return a;
}

mpz_class Sha512Mod(std::span<const uint8_t> tag, uint32_t ctr,
                    const mpz_class& mod) {
  std::vector<uint8_t> msg(tag.begin(), tag.end());
  for (int i = 0; i < 4; ++i) msg.push_back(static_cast<uint8_t>(ctr >> (24 - 8 * i)));
  std::array<uint8_t, 64> digest{};
  unsigned int len = 0;
  EVP_Digest(msg.data(), msg.size(), digest.data(), &len, EVP_sha512(), nullptr);
  mpz_class v = FromBytes(digest);
  mpz_mod(v.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
  return v;
}

}  // namespace

const TypeAParams* FindTypeAParams(unsigned security_level) {
  static const TypeAParams a80 = MakeA80();
  if (security_level == 80) return &a80;
  return nullptr;
}

std::vector<uint8_t> ToFixedBytes(const mpz_class& v, size_t width) {
  std::vector<uint8_t> out(width, 0);
  size_t count = 0;
  std::vector<uint8_t> raw((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8 + 1);
  mpz_export(raw.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
  if (count > width) count = width;  // callers guarantee v fits
  std::copy(raw.begin(), raw.begin() + count, out.end() - count);
  return out;
}

mpz_class FromBytes(std::span<const uint8_t> in) {
  mpz_class v;
  if (!in.empty()) mpz_import(v.get_mpz_t(), in.size(), 1, 1, 1, 0, in.data());
  return v;
}

TypeACurve::TypeACurve(const TypeAParams& params)
    : params_(params),
      field_bytes_((mpz_sizeinbase(params.p.get_mpz_t(), 2) + 7) / 8),
      scalar_bytes_((mpz_sizeinbase(params.r.get_mpz_t(), 2) + 7) / 8),
      sqrt_exp_((params.p + 1) / 4) {}

void TypeACurve::Reduce(mpz_class& v) const {
  mpz_mod(v.get_mpz_t(), v.get_mpz_t(), params_.p.get_mpz_t());
}

bool TypeACurve::OnCurve(const Point& pt) const {
  if (pt.inf) return true;
  if (pt.x < 0 || pt.x >= p() || pt.y < 0 || pt.y >= p()) return false;
  mpz_class lhs = pt.y * pt.y;
  mpz_class rhs = pt.x * pt.x * pt.x + pt.x;
  Reduce(lhs);
  Reduce(rhs);
  return lhs == rhs;
}

Point TypeACurve::Neg(const Point& a) const {
  if (a.inf) return a;
  Point out = a;
  if (out.y != 0) out.y = p() - out.y;
  return out;
}

Point TypeACurve::Add(const Point& a, const Point& b) const {
  if (a.inf) return b;
  if (b.inf) return a;
  mpz_class lam, den;
  if (a.x == b.x) {
    if (a.y != b.y || a.y == 0) return Point{};
    lam = 3 * a.x * a.x + 1;
    den = 2 * a.y;
  } else {
    lam = b.y - a.y;
    den = b.x - a.x;
  }
  Reduce(den);
  mpz_invert(den.get_mpz_t(), den.get_mpz_t(), p().get_mpz_t());
  lam *= den;
  Reduce(lam);
  Point out;
  out.inf = false;
  out.x = lam * lam - a.x - b.x;
  Reduce(out.x);
  out.y = lam * (a.x - out.x) - a.y;
  Reduce(out.y);
  return out;
}

// dbl-2007-bl style doubling for a = 1.
TypeACurve::Jacobian TypeACurve::JDouble(const Jacobian& a) const {
  if (a.Z == 0 || a.Y == 0) return Jacobian{0, 1, 0};
  mpz_class xx = a.X * a.X;
  Reduce(xx);
  mpz_class yy = a.Y * a.Y;
  Reduce(yy);
  mpz_class yyyy = yy * yy;
  Reduce(yyyy);
  mpz_class zz = a.Z * a.Z;
  Reduce(zz);
  mpz_class s = 4 * a.X * yy;
  Reduce(s);
  mpz_class m = 3 * xx + zz * zz;
  Reduce(m);
  Jacobian out;
  out.X = m * m - 2 * s;
  Reduce(out.X);
  out.Y = m * (s - out.X) - 8 * yyyy;
  Reduce(out.Y);
  out.Z = 2 * a.Y * a.Z;
  Reduce(out.Z);
  return out;
}

TypeACurve::Jacobian TypeACurve::JAddAffine(const Jacobian& a,
                                            const Point& b) const {
  if (b.inf) return a;
  if (a.Z == 0) return Jacobian{b.x, b.y, 1};
  mpz_class z1z1 = a.Z * a.Z;
  Reduce(z1z1);
  mpz_class u2 = b.x * z1z1;
  Reduce(u2);
  mpz_class s2 = b.y * a.Z * z1z1;
  Reduce(s2);
  mpz_class hh = u2 - a.X;
  Reduce(hh);
  mpz_class rr = s2 - a.Y;
  Reduce(rr);
  if (hh == 0) {
    if (rr == 0) return JDouble(a);
    return Jacobian{0, 1, 0};
  }
  mpz_class h2 = hh * hh;
  Reduce(h2);
  mpz_class h3 = h2 * hh;
  Reduce(h3);
  mpz_class v = a.X * h2;
  Reduce(v);
  Jacobian out;
  out.X = rr * rr - h3 - 2 * v;
  Reduce(out.X);
  out.Y = rr * (v - out.X) - a.Y * h3;
  Reduce(out.Y);
  out.Z = a.Z * hh;
  Reduce(out.Z);
  return out;
}

Point TypeACurve::ToAffine(const Jacobian& a) const {
  if (a.Z == 0) return Point{};
  mpz_class zinv;
  mpz_invert(zinv.get_mpz_t(), a.Z.get_mpz_t(), p().get_mpz_t());
  mpz_class zinv2 = zinv * zinv;
  Reduce(zinv2);
  Point out;
  out.inf = false;
  out.x = a.X * zinv2;
  Reduce(out.x);
  out.y = a.Y * zinv2 * zinv;
  Reduce(out.y);
  return out;
}

Point TypeACurve::Mul(const Point& base, const mpz_class& k) const {
  if (base.inf || k == 0) return Point{};
  mpz_class e = k;
  Point b = base;
  if (e < 0) {
    e = -e;
    b = Neg(b);
  }
  Jacobian acc{0, 1, 0};
  for (long i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0;
       --i) {
    acc = JDouble(acc);
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = JAddAffine(acc, b);
  }
  return ToAffine(acc);
}

bool TypeACurve::Sqrt(const mpz_class& v, mpz_class& root) const {
  mpz_powm(root.get_mpz_t(), v.get_mpz_t(), sqrt_exp_.get_mpz_t(),
           p().get_mpz_t());
  mpz_class check = root * root;
  Reduce(check);
  mpz_class vv = v;
  Reduce(vv);
  return check == vv;
}

Point TypeACurve::HashToSubgroup(std::span<const uint8_t> tag) const {
  for (uint32_t ctr = 0;; ++ctr) {
    mpz_class x = Sha512Mod(tag, ctr, p());
    mpz_class rhs = x * x * x + x;
    Reduce(rhs);
    mpz_class y;
    if (!Sqrt(rhs, y)) continue;
    if (mpz_odd_p(y.get_mpz_t())) y = p() - y;
    Point candidate{x, y, false};
    Point out = Mul(candidate, params_.h);
    if (!out.inf) return out;
  }
}

Fp2 TypeACurve::One() const { return Fp2{1, 0}; }

Fp2 TypeACurve::FMul(const Fp2& x, const Fp2& y) const {
  mpz_class ac = x.a * y.a;
  mpz_class bd = x.b * y.b;
  mpz_class cross = (x.a + x.b) * (y.a + y.b);
  Fp2 out;
  out.a = ac - bd;
  Reduce(out.a);
  out.b = cross - ac - bd;
  Reduce(out.b);
  return out;
}

Fp2 TypeACurve::FSqr(const Fp2& x) const {
  Fp2 out;
  out.a = (x.a + x.b) * (x.a - x.b);
  Reduce(out.a);
  out.b = 2 * x.a * x.b;
  Reduce(out.b);
  return out;
}

Fp2 TypeACurve::FConj(const Fp2& x) const {
  Fp2 out = x;
  if (out.b != 0) out.b = p() - out.b;
  return out;
}

Fp2 TypeACurve::FInv(const Fp2& x) const {
  mpz_class norm = x.a * x.a + x.b * x.b;
  Reduce(norm);
  mpz_invert(norm.get_mpz_t(), norm.get_mpz_t(), p().get_mpz_t());
  Fp2 out = FConj(x);
  out.a *= norm;
  Reduce(out.a);
  out.b *= norm;
  Reduce(out.b);
  return out;
}

Fp2 TypeACurve::FPow(const Fp2& base, const mpz_class& k) const {
  Fp2 acc = One();
  if (k == 0) return acc;
  mpz_class e = k;
  Fp2 b = base;
  if (e < 0) {
    e = -e;
    b = FInv(b);
  }
  for (long i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0;
       --i) {
    acc = FSqr(acc);
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = FMul(acc, b);
  }
  return acc;
}

bool TypeACurve::InGt(const Fp2& x) const {
  if (x.a < 0 || x.a >= p() || x.b < 0 || x.b >= p()) return false;
  mpz_class norm = x.a * x.a + x.b * x.b;
  Reduce(norm);
  if (norm != 1) return false;
  return FPow(x, r()) == One();
}

Fp2 TypeACurve::Pairing(const Point& P, const Point& Q) const {
  if (P.inf || Q.inf) return One();

  // Lines are evaluated at phi(Q) = (-xQ, i*yQ); vertical lines land in F_p
  // and vanish under the final exponentiation, so they are skipped.
  const mpz_class& xq = Q.x;
  const mpz_class& yq = Q.y;
  Fp2 f = One();
  mpz_class tx = P.x, ty = P.y;
  bool t_inf = false;
  mpz_class lam, den, nx;

  auto line = [&](const mpz_class& slope) {
    Fp2 l;
    l.a = slope * (xq + tx) - ty;
    Reduce(l.a);
    l.b = yq;
    f = FMul(f, l);
  };

  const long nbits = static_cast<long>(mpz_sizeinbase(r().get_mpz_t(), 2));
  for (long i = nbits - 2; i >= 0; --i) {
    f = FSqr(f);
    if (!t_inf) {
      if (ty == 0) {
        t_inf = true;
      } else {
        lam = 3 * tx * tx + 1;
        den = 2 * ty;
        mpz_invert(den.get_mpz_t(), den.get_mpz_t(), p().get_mpz_t());
        lam *= den;
        Reduce(lam);
        line(lam);
        nx = lam * lam - 2 * tx;
        Reduce(nx);
        ty = lam * (tx - nx) - ty;
        Reduce(ty);
        tx = nx;
      }
    }
    if (mpz_tstbit(r().get_mpz_t(), i)) {
      if (t_inf) {
        tx = P.x;
        ty = P.y;
        t_inf = false;
      } else if (tx == P.x) {
        // T == -P: vertical line. T == P cannot occur for i < nbits - 1.
        t_inf = true;
      } else {
        den = P.x - tx;
        Reduce(den);
        mpz_invert(den.get_mpz_t(), den.get_mpz_t(), p().get_mpz_t());
        lam = (P.y - ty) * den;
        Reduce(lam);
        line(lam);
        nx = lam * lam - tx - P.x;
        Reduce(nx);
        ty = lam * (tx - nx) - ty;
        Reduce(ty);
        tx = nx;
      }
    }
  }

  // f^((p^2 - 1) / r) = (f^(p - 1))^h, and f^p = conj(f).
  f = FMul(FConj(f), FInv(f));
  return FPow(f, params_.h);
}

std::vector<uint8_t> TypeACurve::EncodePoint(const Point& pt) const {
  std::vector<uint8_t> out(point_bytes(), 0);
  if (pt.inf) return out;
  out[0] = mpz_odd_p(pt.y.get_mpz_t()) ? 0x03 : 0x02;
  auto x = ToFixedBytes(pt.x, field_bytes_);
  std::copy(x.begin(), x.end(), out.begin() + 1);
  return out;
}

bool TypeACurve::DecodePoint(std::span<const uint8_t> in, Point& out) const {
  if (in.size() != point_bytes()) return false;
  if (in[0] == 0x00) {
    for (size_t i = 1; i < in.size(); ++i) {
      if (in[i] != 0) return false;
    }
    out = Point{};
    return true;
  }
  if (in[0] != 0x02 && in[0] != 0x03) return false;
  mpz_class x = FromBytes(in.subspan(1));
  if (x >= p()) return false;
  mpz_class rhs = x * x * x + x;
  Reduce(rhs);
  mpz_class y;
  if (!Sqrt(rhs, y)) return false;
  const bool want_odd = in[0] == 0x03;
  if (static_cast<bool>(mpz_odd_p(y.get_mpz_t())) != want_odd) {
    if (y == 0) return false;
    y = p() - y;
  }
  Point pt{x, y, false};
  if (!Mul(pt, r()).inf) return false;
  out = pt;
  return true;
}

std::vector<uint8_t> TypeACurve::EncodeFp2(const Fp2& x) const {
  auto out = ToFixedBytes(x.a, field_bytes_);
  auto b = ToFixedBytes(x.b, field_bytes_);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

bool TypeACurve::DecodeFp2(std::span<const uint8_t> in, Fp2& out) const {
  if (in.size() != fp2_bytes()) return false;
  Fp2 v{FromBytes(in.first(field_bytes_)), FromBytes(in.subspan(field_bytes_))};
  if (!InGt(v)) return false;
  out = v;
  return true;
}

}  // namespace rbe::detail
