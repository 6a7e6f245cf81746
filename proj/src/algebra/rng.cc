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

#include "rbe/algebra/rng.h"

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <cstring>
#include <memory>

#include "rbe/error.h"

namespace rbe {

namespace {

Rng::Seed Sha256Seed(const uint8_t* data, size_t len) {
  Rng::Seed out{};
  unsigned int out_len = 0;
  RBE_ENFORCE(EVP_Digest(data, len, out.data(), &out_len, EVP_sha256(),
                         nullptr) == 1,
              ErrorCode::kRng, "sha256 failed");
  return out;
}

}  // namespace

Rng::Rng(const Seed& seed) : key_(seed) {}

Rng::Rng(uint64_t seed) {
  uint8_t bytes[8];
  for (int i = 0; i < 8; ++i) {
    bytes[i] = static_cast<uint8_t>(seed >> (56 - 8 * i));
  }
  key_ = Sha256Seed(bytes, sizeof(bytes));
}

Rng Rng::FromEntropy() {
  Seed seed{};
  RBE_ENFORCE(RAND_bytes(seed.data(), static_cast<int>(seed.size())) == 1,
              ErrorCode::kRng, "OS entropy unavailable");
  return Rng(seed);
}

Rng Rng::Fork(uint64_t label) const {
  uint8_t material[40];
  std::memcpy(material, key_.data(), 32);
  for (int i = 0; i < 8; ++i) {
    material[32 + i] = static_cast<uint8_t>(label >> (56 - 8 * i));
  }
  return Rng(Sha256Seed(material, sizeof(material)));
}

void Rng::Refill() {
  // 16-byte IV for EVP_chacha20 = 32-bit block counter || 96-bit nonce.
  // Each refill uses a fresh nonce so the counter always starts at zero.
  uint8_t iv[16] = {0};
  for (int i = 0; i < 8; ++i) {
    iv[8 + i] = static_cast<uint8_t>(block_ >> (56 - 8 * i));
  }
  ++block_;

  std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)> ctx(
      EVP_CIPHER_CTX_new(), EVP_CIPHER_CTX_free);
  RBE_ENFORCE(ctx != nullptr, ErrorCode::kRng, "cipher ctx alloc failed");
  RBE_ENFORCE(EVP_EncryptInit_ex(ctx.get(), EVP_chacha20(), nullptr,
                                 key_.data(), iv) == 1,
              ErrorCode::kRng, "chacha20 init failed");
  std::array<uint8_t, sizeof(buf_)> zeros{};
  int out_len = 0;
  RBE_ENFORCE(EVP_EncryptUpdate(ctx.get(), buf_.data(), &out_len, zeros.data(),
                                static_cast<int>(zeros.size())) == 1,
              ErrorCode::kRng, "chacha20 keystream failed");
  pos_ = 0;
}

void Rng::Fill(std::span<uint8_t> out) {
  size_t done = 0;
  while (done < out.size()) {
    if (pos_ == buf_.size()) Refill();
    size_t n = std::min(out.size() - done, buf_.size() - pos_);
    std::memcpy(out.data() + done, buf_.data() + pos_, n);
    pos_ += n;
    done += n;
  }
}

uint64_t Rng::NextU64() {
  uint8_t b[8];
  Fill(b);
  uint64_t v = 0;
  for (uint8_t x : b) v = (v << 8) | x;
  return v;
}

uint64_t Rng::Uniform(uint64_t bound) {
  RBE_ENFORCE(bound > 0, ErrorCode::kInvalidArgument, "zero bound");
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t v;
  do {
    v = NextU64();
  } while (v >= limit);
  return v % bound;
}

}  // namespace rbe
