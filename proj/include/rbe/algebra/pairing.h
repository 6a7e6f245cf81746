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

#include <gmpxx.h>

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rbe/algebra/rng.h"
#include "rbe/algebra/type_a.h"

namespace rbe {

using Bytes = std::vector<uint8_t>;

inline std::span<const uint8_t> AsBytes(std::string_view s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

/// Snapshot of the operation counters of a pairing context. Subtraction of
/// two snapshots taken around a single-threaded scope yields the exact number
/// of operations executed in it.
struct OpCounts {
  uint64_t exp_g1 = 0;
  uint64_t exp_gt = 0;
  uint64_t pairings = 0;
  uint64_t mul_g1 = 0;
  uint64_t mul_gt = 0;
  uint64_t hashes = 0;

  OpCounts operator-(const OpCounts& o) const {
    return {exp_g1 - o.exp_g1,     exp_gt - o.exp_gt, pairings - o.pairings,
            mul_g1 - o.mul_g1,     mul_gt - o.mul_gt, hashes - o.hashes};
  }
  OpCounts operator+(const OpCounts& o) const {
    return {exp_g1 + o.exp_g1,     exp_gt + o.exp_gt, pairings + o.pairings,
            mul_g1 + o.mul_g1,     mul_gt + o.mul_gt, hashes + o.hashes};
  }
  bool operator==(const OpCounts&) const = default;

  bool crypto_free() const {
    return exp_g1 == 0 && exp_gt == 0 && pairings == 0 && mul_g1 == 0 &&
           mul_gt == 0 && hashes == 0;
  }
  std::string ToString() const;
};

namespace detail {

struct ContextCore {
  explicit ContextCore(const TypeAParams& params) : curve(params) {}

  TypeACurve curve;
  bool exponent_ledger = false;
  Point g;
  Fp2 gt;  // e(g, g)

  mutable std::atomic<uint64_t> exp_g1{0};
  mutable std::atomic<uint64_t> exp_gt{0};
  mutable std::atomic<uint64_t> pairings{0};
  mutable std::atomic<uint64_t> mul_g1{0};
  mutable std::atomic<uint64_t> mul_gt{0};
  mutable std::atomic<uint64_t> hashes{0};
};

using CorePtr = std::shared_ptr<const ContextCore>;

}  // namespace detail

class PairingContext;

/// Element of Z_q. Arithmetic is modulo the group order of the owning
/// context and is not counted.
class Scalar {
 public:
  Scalar() = default;

  const mpz_class& value() const { return v_; }
  bool valid() const { return core_ != nullptr; }
  bool is_zero() const { return v_ == 0; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  // Multiplicative inverse; throws InvalidArgument on zero.
  Scalar Inverse() const;

  bool operator==(const Scalar& o) const { return v_ == o.v_; }

  // Fixed-width big-endian encoding.
  Bytes ToBytes() const;

 private:
  friend class PairingContext;
  Scalar(detail::CorePtr core, mpz_class v);
  const mpz_class& order() const { return core_->curve.r(); }

  detail::CorePtr core_;
  mpz_class v_;
};

/// Element of the source group G1. When the owning context has the exponent
/// ledger enabled, elements produced by library calls remember their discrete
/// logarithm base g.
class G1Element {
 public:
  G1Element() = default;

  bool valid() const { return core_ != nullptr; }
  bool is_identity() const { return pt_.inf; }
  const std::optional<mpz_class>& ledger() const { return dlog_; }

  // Canonical comparison: same context and same point.
  bool operator==(const G1Element& o) const {
    return core_ == o.core_ && pt_ == o.pt_;
  }

 private:
  friend class PairingContext;
  detail::CorePtr core_;
  detail::Point pt_;
  std::optional<mpz_class> dlog_;
};

/// Element of the target group GT; ledger base is e(g, g).
class GTElement {
 public:
  GTElement() = default;

  bool valid() const { return core_ != nullptr; }
  bool is_identity() const { return v_.a == 1 && v_.b == 0; }
  const std::optional<mpz_class>& ledger() const { return dlog_; }

  bool operator==(const GTElement& o) const {
    return core_ == o.core_ && v_ == o.v_;
  }

 private:
  friend class PairingContext;
  detail::CorePtr core_;
  detail::Fp2 v_;
  std::optional<mpz_class> dlog_;
};

struct PairingOptions {
  // Track discrete logs of derived elements (test oracle only).
  bool exponent_ledger = false;
};

/// Handle to a pairing setting: G1, GT of prime order q, generator g, the
/// symmetric pairing e and H1. Copies share the same groups and counters;
/// independently created contexts never mix operands.
class PairingContext {
 public:
  static PairingContext Setup(unsigned security_level,
                              PairingOptions options = {});
  static std::vector<unsigned> SupportedLevels();

  unsigned security_level() const;
  const std::string& curve_name() const;
  const mpz_class& order() const;
  bool ledger_enabled() const { return core_->exponent_ledger; }

  G1Element g() const;
  G1Element g1_identity() const;
  GTElement gt_generator() const;  // e(g, g), not counted
  GTElement gt_identity() const;

  // --- scalars (uncounted except hashing) ---
  Scalar scalar(const mpz_class& v) const;
  Scalar scalar(long v) const;
  Scalar RandomNonzeroScalar(Rng& rng) const;
  // H1: {0,1}* -> Z_q^*, domain separated; counts one hash.
  Scalar HashToScalar(std::span<const uint8_t> data) const;
  Scalar HashToScalar(std::string_view data) const {
    return HashToScalar(AsBytes(data));
  }

  // Uniform element of GT. Sampling is not an exponentiation in the cost
  // model and is not counted.
  GTElement RandomGt(Rng& rng) const;

  // --- counted group operations ---
  G1Element Exp(const G1Element& x, const Scalar& s) const;
  GTElement Exp(const GTElement& x, const Scalar& s) const;
  G1Element Mul(const G1Element& x, const G1Element& y) const;
  GTElement Mul(const GTElement& x, const GTElement& y) const;
  // x / y, counted as one multiplication.
  G1Element Div(const G1Element& x, const G1Element& y) const;
  GTElement Div(const GTElement& x, const GTElement& y) const;
  GTElement Pair(const G1Element& x, const G1Element& y) const;

  OpCounts counters() const;

  // --- canonical encodings ---
  size_t g1_bytes() const;
  size_t gt_bytes() const;
  size_t scalar_bytes() const;
  Bytes Serialize(const G1Element& x) const;
  Bytes Serialize(const GTElement& x) const;
  Bytes Serialize(const Scalar& s) const;
  G1Element DeserializeG1(std::span<const uint8_t> in) const;
  GTElement DeserializeGt(std::span<const uint8_t> in) const;
  Scalar DeserializeScalar(std::span<const uint8_t> in) const;

  // --- exponent-ledger oracle (uncounted) ---
  // Elements equal to g^e / e(g,g)^e computed on a path disjoint from the
  // scheme operations.
  G1Element G1FromExponent(const Scalar& e) const;
  GTElement GtFromExponent(const Scalar& e) const;
  // True iff the element carries an annotation and its bytes equal the
  // element rebuilt from that annotation.
  bool LedgerSound(const G1Element& x) const;
  bool LedgerSound(const GTElement& x) const;
  std::optional<Scalar> LedgerOf(const G1Element& x) const;
  std::optional<Scalar> LedgerOf(const GTElement& x) const;

  bool operator==(const PairingContext& o) const { return core_ == o.core_; }

 private:
  explicit PairingContext(std::shared_ptr<detail::ContextCore> core)
      : core_(std::move(core)) {}

  void Check(const detail::CorePtr& other) const;
  std::optional<mpz_class> LedgerMod(const mpz_class& v) const;

  std::shared_ptr<detail::ContextCore> core_;
};

/// Records counters at construction; Diff() returns operations since then.
class CounterScope {
 public:
  explicit CounterScope(const PairingContext& ctx)
      : ctx_(ctx), start_(ctx.counters()) {}
  OpCounts Diff() const { return ctx_.counters() - start_; }

 private:
  const PairingContext& ctx_;
  OpCounts start_;
};

}  // namespace rbe
