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

#pragma once

// Supersingular curve E: y^2 = x^3 + x over F_p, p = 3 mod 4, with embedding
// degree 2. G1 is the order-r subgroup of E(F_p); GT is the order-r subgroup
// of F_p^2* with F_p^2 = F_p[i]/(i^2 + 1). The pairing is the reduced Tate
// pairing composed with the distortion map (x, y) -> (-x, i*y), which makes it
// symmetric.

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rbe::detail {

struct TypeAParams {
  std::string name;
  unsigned security_level = 0;
  mpz_class p;  // field prime
  mpz_class r;  // group order
  mpz_class h;  // cofactor, p + 1 = h * r
};

// Returns the built-in parameter set for `security_level`, or nullptr.
const TypeAParams* FindTypeAParams(unsigned security_level);

struct Point {
  mpz_class x;
  mpz_class y;
  bool inf = true;

  friend bool operator==(const Point& a, const Point& b) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return a.x == b.x && a.y == b.y;
  }
};

struct Fp2 {
  mpz_class a;  // real part
  mpz_class b;  // coefficient of i

  friend bool operator==(const Fp2& x, const Fp2& y) {
    return x.a == y.a && x.b == y.b;
  }
};

class TypeACurve {
 public:
  explicit TypeACurve(const TypeAParams& params);

  const TypeAParams& params() const { return params_; }
  const mpz_class& p() const { return params_.p; }
  const mpz_class& r() const { return params_.r; }

  size_t field_bytes() const { return field_bytes_; }
  size_t scalar_bytes() const { return scalar_bytes_; }
  size_t point_bytes() const { return field_bytes_ + 1; }
  size_t fp2_bytes() const { return 2 * field_bytes_; }

  // --- G1 ---
  bool OnCurve(const Point& pt) const;
  Point Add(const Point& a, const Point& b) const;
  Point Neg(const Point& a) const;
  Point Mul(const Point& base, const mpz_class& k) const;
  // Deterministic point of order r derived from `tag`.
  Point HashToSubgroup(std::span<const uint8_t> tag) const;

  // --- GT (and F_p^2 in general) ---
  Fp2 One() const;
  Fp2 FMul(const Fp2& x, const Fp2& y) const;
  Fp2 FSqr(const Fp2& x) const;
  Fp2 FInv(const Fp2& x) const;
  Fp2 FConj(const Fp2& x) const;
  Fp2 FPow(const Fp2& base, const mpz_class& k) const;
  // Membership in the order-r subgroup of F_p^2*.
  bool InGt(const Fp2& x) const;

  Fp2 Pairing(const Point& P, const Point& Q) const;

  // --- canonical encodings ---
  // 1 flag byte (0x00 infinity, 0x02 even y, 0x03 odd y) || x big-endian.
  std::vector<uint8_t> EncodePoint(const Point& pt) const;
  // Validates length, flag, curve membership and subgroup membership.
  bool DecodePoint(std::span<const uint8_t> in, Point& out) const;
  // a || b, each big-endian field_bytes wide.
  std::vector<uint8_t> EncodeFp2(const Fp2& x) const;
  bool DecodeFp2(std::span<const uint8_t> in, Fp2& out) const;

 private:
  struct Jacobian {
    mpz_class X, Y, Z;  // Z == 0 encodes infinity
  };

  void Reduce(mpz_class& v) const;
  Jacobian JDouble(const Jacobian& a) const;
  Jacobian JAddAffine(const Jacobian& a, const Point& b) const;
  Point ToAffine(const Jacobian& a) const;
  bool Sqrt(const mpz_class& v, mpz_class& root) const;

  TypeAParams params_;
  size_t field_bytes_;
  size_t scalar_bytes_;
  mpz_class sqrt_exp_;   // (p + 1) / 4
};

// Big-endian fixed-width helpers shared by encoders.
std::vector<uint8_t> ToFixedBytes(const mpz_class& v, size_t width);
mpz_class FromBytes(std::span<const uint8_t> in);

}  // namespace rbe::detail
