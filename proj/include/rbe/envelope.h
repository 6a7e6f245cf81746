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

// Hybrid layer: a symmetric key is derived from the GT element K and the
// payload is sealed with an AEAD, so decryption with the wrong K is detected.
//
// Container layout (all integers big-endian):
//   "RBEC" | version u8 | mode u8 (0x01 single-org, 0x02 multi-org)
//   single-org: org str16 | role str16 | C1 | C2 | C_role | C3 entries
//   multi-org:  org str16 | partner_org str16 | role str16 |
//               partner_role str16 | C1 | C2 | C'2 | C_role | C'_role |
//               C3 entries | C'3 entries
//   nonce (12 bytes) | body (u32 length | ciphertext || 16-byte tag)
// where C* are element records and "entries" is u16 count followed by
// (role name str16 | G1 record) sorted by role name. Version 0x01 fixes the
// suite to HKDF-SHA256 and AES-256-GCM; every byte before the nonce is bound
// as associated data.

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>

#include "rbe/algebra/pairing.h"
#include "rbe/mo_rbe.h"
#include "rbe/so_rbe.h"

namespace rbe::envelope {

inline constexpr size_t kDekBytes = 32;
inline constexpr size_t kNonceBytes = 12;
inline constexpr size_t kTagBytes = 16;
inline constexpr uint8_t kVersion = 0x01;
inline constexpr uint8_t kModeSingle = 0x01;
inline constexpr uint8_t kModeMulti = 0x02;
inline constexpr std::string_view kKdfContext = "RBE/DEM/HKDF-SHA256/AES-256-GCM/v1";

using Dek = std::array<uint8_t, kDekBytes>;

Dek DeriveDek(const PairingContext& ctx, const GTElement& key);

struct SealedPayload {
  std::array<uint8_t, kNonceBytes> nonce{};
  Bytes body;  // ciphertext || tag
};

SealedPayload Seal(const PairingContext& ctx, std::span<const uint8_t> message,
                   const GTElement& key, Rng& rng,
                   std::span<const uint8_t> aad = {});
// Throws Error(kAuthFailure) on a wrong key or any modified byte.
Bytes Open(const PairingContext& ctx, const SealedPayload& sealed,
           const GTElement& key, std::span<const uint8_t> aad = {});

struct SingleOrgCiphertext {
  so::KemCiphertext kem;
  SealedPayload payload;
};

struct MultiOrgCiphertext {
  mo::MultiKemCiphertext kem;
  SealedPayload payload;
};

using Ciphertext = std::variant<SingleOrgCiphertext, MultiOrgCiphertext>;

// Header = every container byte before the nonce.
Bytes EncodeHeader(const PairingContext& ctx, const so::KemCiphertext& kem);
Bytes EncodeHeader(const PairingContext& ctx, const mo::MultiKemCiphertext& kem);

Bytes EncodeContainer(const PairingContext& ctx, const Ciphertext& ct);
Ciphertext DecodeContainer(const PairingContext& ctx,
                           std::span<const uint8_t> in);

SingleOrgCiphertext EncryptSingle(const PairingContext& ctx,
                                  const so::PublicParams& pp,
                                  const so::RolePublicKey& rpk,
                                  std::span<const uint8_t> message, Rng& rng);
MultiOrgCiphertext EncryptMulti(const PairingContext& ctx,
                                const so::PublicParams& pp,
                                const so::PublicParams& partner_pp,
                                const mo::JointRolePublicKey& joint,
                                std::span<const uint8_t> message, Rng& rng);

Bytes OpenSingle(const PairingContext& ctx, const SingleOrgCiphertext& ct,
                 const GTElement& key);
Bytes OpenMulti(const PairingContext& ctx, const MultiOrgCiphertext& ct,
                const GTElement& key);

}  // namespace rbe::envelope
