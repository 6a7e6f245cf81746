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

#include "rbe/algebra/pairing.h"

#include <openssl/evp.h>

#include <array>
#include <sstream>

#include "rbe/error.h"

namespace rbe {

namespace {

constexpr std::string_view kGeneratorTag = "RBE/type-a/generator/v1";
constexpr std::string_view kH1Tag = "RBE/H1/v1";

mpz_class ModR(const mpz_class& v, const mpz_class& r) {
  mpz_class out;
  mpz_mod(out.get_mpz_t(), v.get_mpz_t(), r.get_mpz_t());
  return out;
}

}  // namespace

std::string OpCounts::ToString() const {
  std::ostringstream os;
  os << "exp_g1=" << exp_g1 << " exp_gt=" << exp_gt << " pairings=" << pairings
     << " mul_g1=" << mul_g1 << " mul_gt=" << mul_gt << " hashes=" << hashes;
  return os.str();
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(detail::CorePtr core, mpz_class v)
    : core_(std::move(core)), v_(std::move(v)) {}

Scalar Scalar::operator+(const Scalar& o) const {
  RBE_ENFORCE(core_ && core_ == o.core_, ErrorCode::kCrossContext,
              "scalar operands from different contexts");
  return Scalar(core_, ModR(v_ + o.v_, order()));
}

Scalar Scalar::operator-(const Scalar& o) const {
  RBE_ENFORCE(core_ && core_ == o.core_, ErrorCode::kCrossContext,
              "scalar operands from different contexts");
  return Scalar(core_, ModR(v_ - o.v_, order()));
}

Scalar Scalar::operator*(const Scalar& o) const {
  RBE_ENFORCE(core_ && core_ == o.core_, ErrorCode::kCrossContext,
              "scalar operands from different contexts");
  return Scalar(core_, ModR(v_ * o.v_, order()));
}

Scalar Scalar::operator-() const {
  RBE_ENFORCE(core_ != nullptr, ErrorCode::kInvalidArgument, "empty scalar");
  return Scalar(core_, ModR(-v_, order()));
}

Scalar Scalar::Inverse() const {
  RBE_ENFORCE(core_ != nullptr, ErrorCode::kInvalidArgument, "empty scalar");
  RBE_ENFORCE(v_ != 0, ErrorCode::kInvalidArgument, "inverse of zero");
  mpz_class out;
  mpz_invert(out.get_mpz_t(), v_.get_mpz_t(), order().get_mpz_t());
  return Scalar(core_, out);
}

Bytes Scalar::ToBytes() const {
  RBE_ENFORCE(core_ != nullptr, ErrorCode::kInvalidArgument, "empty scalar");
  return detail::ToFixedBytes(v_, core_->curve.scalar_bytes());
}

// ---------------------------------------------------------------- context

PairingContext PairingContext::Setup(unsigned security_level,
                                     PairingOptions options) {
  const detail::TypeAParams* params = detail::FindTypeAParams(security_level);
  RBE_ENFORCE(params != nullptr, ErrorCode::kUnsupported,
              "unsupported security level " + std::to_string(security_level));
  auto core = std::make_shared<detail::ContextCore>(*params);
  core->exponent_ledger = options.exponent_ledger;
  core->g = core->curve.HashToSubgroup(AsBytes(kGeneratorTag));
  core->gt = core->curve.Pairing(core->g, core->g);
  return PairingContext(std::move(core));
}

std::vector<unsigned> PairingContext::SupportedLevels() { return {80}; }

unsigned PairingContext::security_level() const {
  return core_->curve.params().security_level;
}
const std::string& PairingContext::curve_name() const {
  return core_->curve.params().name;
}
const mpz_class& PairingContext::order() const { return core_->curve.r(); }

void PairingContext::Check(const detail::CorePtr& other) const {
  RBE_ENFORCE(other != nullptr, ErrorCode::kInvalidArgument,
              "uninitialized element");
  RBE_ENFORCE(other == core_, ErrorCode::kCrossContext,
              "operand belongs to a different pairing context");
}

std::optional<mpz_class> PairingContext::LedgerMod(const mpz_class& v) const {
  if (!core_->exponent_ledger) return std::nullopt;
  return ModR(v, order());
}

G1Element PairingContext::g() const {
  G1Element out;
  out.core_ = core_;
  out.pt_ = core_->g;
  out.dlog_ = LedgerMod(1);
  return out;
}

G1Element PairingContext::g1_identity() const {
  G1Element out;
  out.core_ = core_;
  out.dlog_ = LedgerMod(0);
  return out;
}

GTElement PairingContext::gt_generator() const {
  GTElement out;
  out.core_ = core_;
  out.v_ = core_->gt;
  out.dlog_ = LedgerMod(1);
  return out;
}

GTElement PairingContext::gt_identity() const {
  GTElement out;
  out.core_ = core_;
  out.v_ = core_->curve.One();
  out.dlog_ = LedgerMod(0);
  return out;
}

Scalar PairingContext::scalar(const mpz_class& v) const {
  return Scalar(core_, ModR(v, order()));
}

Scalar PairingContext::scalar(long v) const { return scalar(mpz_class(v)); }

Scalar PairingContext::RandomNonzeroScalar(Rng& rng) const {
  // Rejection sampling on [0, q-2] with the minimal bit width, shifted by 1.
  const mpz_class bound = order() - 1;
  const size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  Bytes buf((bits + 7) / 8);
  const unsigned top_bits = bits % 8 == 0 ? 8 : bits % 8;
  const uint8_t mask = static_cast<uint8_t>((1u << top_bits) - 1);
  for (;;) {
    rng.Fill(buf);
    buf[0] &= mask;
    mpz_class v = detail::FromBytes(buf);
    if (v < bound) return Scalar(core_, v + 1);
  }
}

Scalar PairingContext::HashToScalar(std::span<const uint8_t> data) const {
  core_->hashes.fetch_add(1, std::memory_order_relaxed);
  for (uint32_t ctr = 0;; ++ctr) {
    Bytes msg(kH1Tag.begin(), kH1Tag.end());
    for (int i = 0; i < 4; ++i) {
      msg.push_back(static_cast<uint8_t>(ctr >> (24 - 8 * i)));
    }
    msg.insert(msg.end(), data.begin(), data.end());
    std::array<uint8_t, 64> digest{};
    unsigned int len = 0;
    RBE_ENFORCE(EVP_Digest(msg.data(), msg.size(), digest.data(), &len,
                           EVP_sha512(), nullptr) == 1,
                ErrorCode::kInvalidArgument, "sha512 failed");
    mpz_class v = ModR(detail::FromBytes(digest), order());
    if (v != 0) return Scalar(core_, v);
  }
}

GTElement PairingContext::RandomGt(Rng& rng) const {
  Scalar k = RandomNonzeroScalar(rng);
  GTElement out;
  out.core_ = core_;
  out.v_ = core_->curve.FPow(core_->gt, k.value());
  out.dlog_ = LedgerMod(k.value());
  return out;
}

G1Element PairingContext::Exp(const G1Element& x, const Scalar& s) const {
  Check(x.core_);
  Check(s.core_);
  core_->exp_g1.fetch_add(1, std::memory_order_relaxed);
  G1Element out;
  out.core_ = core_;
  out.pt_ = core_->curve.Mul(x.pt_, s.value());
  if (x.dlog_) out.dlog_ = LedgerMod(*x.dlog_ * s.value());
  return out;
}

GTElement PairingContext::Exp(const GTElement& x, const Scalar& s) const {
  Check(x.core_);
  Check(s.core_);
  core_->exp_gt.fetch_add(1, std::memory_order_relaxed);
  GTElement out;
  out.core_ = core_;
  out.v_ = core_->curve.FPow(x.v_, s.value());
  if (x.dlog_) out.dlog_ = LedgerMod(*x.dlog_ * s.value());
  return out;
}

G1Element PairingContext::Mul(const G1Element& x, const G1Element& y) const {
  Check(x.core_);
  Check(y.core_);
  core_->mul_g1.fetch_add(1, std::memory_order_relaxed);
  G1Element out;
  out.core_ = core_;
  out.pt_ = core_->curve.Add(x.pt_, y.pt_);
  if (x.dlog_ && y.dlog_) out.dlog_ = LedgerMod(*x.dlog_ + *y.dlog_);
  return out;
}

GTElement PairingContext::Mul(const GTElement& x, const GTElement& y) const {
  Check(x.core_);
  Check(y.core_);
  core_->mul_gt.fetch_add(1, std::memory_order_relaxed);
  GTElement out;
  out.core_ = core_;
  out.v_ = core_->curve.FMul(x.v_, y.v_);
  if (x.dlog_ && y.dlog_) out.dlog_ = LedgerMod(*x.dlog_ + *y.dlog_);
  return out;
}

G1Element PairingContext::Div(const G1Element& x, const G1Element& y) const {
  Check(x.core_);
  Check(y.core_);
  core_->mul_g1.fetch_add(1, std::memory_order_relaxed);
  G1Element out;
  out.core_ = core_;
  out.pt_ = core_->curve.Add(x.pt_, core_->curve.Neg(y.pt_));
  if (x.dlog_ && y.dlog_) out.dlog_ = LedgerMod(*x.dlog_ - *y.dlog_);
  return out;
}

GTElement PairingContext::Div(const GTElement& x, const GTElement& y) const {
  Check(x.core_);
  Check(y.core_);
  core_->mul_gt.fetch_add(1, std::memory_order_relaxed);
  GTElement out;
  out.core_ = core_;
  // GT elements are unitary, so the inverse is the conjugate.
  out.v_ = core_->curve.FMul(x.v_, core_->curve.FConj(y.v_));
  if (x.dlog_ && y.dlog_) out.dlog_ = LedgerMod(*x.dlog_ - *y.dlog_);
  return out;
}

GTElement PairingContext::Pair(const G1Element& x, const G1Element& y) const {
  Check(x.core_);
  Check(y.core_);
  core_->pairings.fetch_add(1, std::memory_order_relaxed);
  GTElement out;
  out.core_ = core_;
  out.v_ = core_->curve.Pairing(x.pt_, y.pt_);
  if (x.dlog_ && y.dlog_) out.dlog_ = LedgerMod(*x.dlog_ * *y.dlog_);
  return out;
}

OpCounts PairingContext::counters() const {
  return {core_->exp_g1.load(), core_->exp_gt.load(), core_->pairings.load(),
          core_->mul_g1.load(), core_->mul_gt.load(), core_->hashes.load()};
}

size_t PairingContext::g1_bytes() const { return core_->curve.point_bytes(); }
size_t PairingContext::gt_bytes() const { return core_->curve.fp2_bytes(); }
size_t PairingContext::scalar_bytes() const {
  return core_->curve.scalar_bytes();
}

Bytes PairingContext::Serialize(const G1Element& x) const {
  Check(x.core_);
  return core_->curve.EncodePoint(x.pt_);
}

Bytes PairingContext::Serialize(const GTElement& x) const {
  Check(x.core_);
  return core_->curve.EncodeFp2(x.v_);
}

Bytes PairingContext::Serialize(const Scalar& s) const {
  Check(s.core_);
  return s.ToBytes();
}

G1Element PairingContext::DeserializeG1(std::span<const uint8_t> in) const {
  G1Element out;
  RBE_ENFORCE(core_->curve.DecodePoint(in, out.pt_), ErrorCode::kDecode,
              "invalid G1 encoding");
  out.core_ = core_;
  return out;
}

GTElement PairingContext::DeserializeGt(std::span<const uint8_t> in) const {
  GTElement out;
  RBE_ENFORCE(core_->curve.DecodeFp2(in, out.v_), ErrorCode::kDecode,
              "invalid GT encoding");
  out.core_ = core_;
  return out;
}

Scalar PairingContext::DeserializeScalar(std::span<const uint8_t> in) const {
  RBE_ENFORCE(in.size() == scalar_bytes(), ErrorCode::kDecode,
              "invalid scalar length");
  mpz_class v = detail::FromBytes(in);
  RBE_ENFORCE(v < order(), ErrorCode::kDecode, "scalar out of range");
  return Scalar(core_, v);
}

G1Element PairingContext::G1FromExponent(const Scalar& e) const {
  Check(e.core_);
  G1Element out;
  out.core_ = core_;
  out.pt_ = core_->curve.Mul(core_->g, e.value());
  out.dlog_ = LedgerMod(e.value());
  return out;
}

GTElement PairingContext::GtFromExponent(const Scalar& e) const {
  Check(e.core_);
  GTElement out;
  out.core_ = core_;
  out.v_ = core_->curve.FPow(core_->gt, e.value());
  out.dlog_ = LedgerMod(e.value());
  return out;
}

std::optional<Scalar> PairingContext::LedgerOf(const G1Element& x) const {
  Check(x.core_);
  if (!x.dlog_) return std::nullopt;
  return Scalar(core_, *x.dlog_);
}

std::optional<Scalar> PairingContext::LedgerOf(const GTElement& x) const {
  Check(x.core_);
  if (!x.dlog_) return std::nullopt;
  return Scalar(core_, *x.dlog_);
}

bool PairingContext::LedgerSound(const G1Element& x) const {
  auto e = LedgerOf(x);
  if (!e) return false;
  return Serialize(x) == core_->curve.EncodePoint(
                             core_->curve.Mul(core_->g, e->value()));
}

bool PairingContext::LedgerSound(const GTElement& x) const {
  auto e = LedgerOf(x);
  if (!e) return false;
  return Serialize(x) ==
         core_->curve.EncodeFp2(core_->curve.FPow(core_->gt, e->value()));
}

}  // namespace rbe
