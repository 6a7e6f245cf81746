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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace rbe {

/// Deterministic byte source: a ChaCha20 keystream keyed by a 32-byte seed.
/// Two instances built from the same seed emit identical streams.
class Rng {
 public:
  using Seed = std::array<uint8_t, 32>;

  explicit Rng(const Seed& seed);
  // Expands a 64-bit seed with SHA-256.
  explicit Rng(uint64_t seed);

  // Seeded from the OS entropy pool; throws Error(kRng) on failure.
  static Rng FromEntropy();

  void Fill(std::span<uint8_t> out);
  uint64_t NextU64();
  // Uniform in [0, bound) by rejection; bound > 0.
  uint64_t Uniform(uint64_t bound);

  // Independent stream for a named sub-task; the parent is not advanced.
  Rng Fork(uint64_t label) const;

 private:
  void Refill();

  Seed key_{};
  uint64_t block_ = 0;
  std::array<uint8_t, 1024> buf_{};
  size_t pos_ = sizeof(buf_);
};

}  // namespace rbe
