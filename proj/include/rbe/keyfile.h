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

// Key-file container: "RBE1" | record type u8 | org str16 | subject str16 |
// type-specific element records. The subject is a role name, user id or
// partner org, and empty for org-wide material.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>

#include "rbe/algebra/wire.h"
#include "rbe/mo_rbe.h"
#include "rbe/so_rbe.h"

namespace rbe::keyfile {

enum class RecordType : uint8_t {
  kPublicParams = 0x01,
  kMasterSecret = 0x02,  // y, delta, sigma, eta, then t per role
  kRolePublicKey = 0x03,
  kRoleSecret = 0x04,
  kUserPrivateKey = 0x05,
  kUserPublicKey = 0x06,
  kUserSecret = 0x07,
  kRoleKey = 0x08,
  kGDelta = 0x09,
  kReKey = 0x0a,
  kLongTermSecret = 0x0b,
};

struct Header {
  RecordType type;
  std::string org;
  std::string subject;
};

Header PeekHeader(std::span<const uint8_t> in);

Bytes EncodePublicParams(const PairingContext& ctx, const so::PublicParams& pp);
so::PublicParams DecodePublicParams(const PairingContext& ctx,
                                    std::span<const uint8_t> in);

Bytes EncodeMasterSecret(const PairingContext& ctx, const std::string& org,
                         const so::MasterSecret& msk,
                         const so::RoleParams& params);
std::pair<so::MasterSecret, so::RoleParams> DecodeMasterSecret(
    const PairingContext& ctx, std::span<const uint8_t> in);

Bytes EncodeRolePublicKey(const PairingContext& ctx,
                          const so::RolePublicKey& rpk);
so::RolePublicKey DecodeRolePublicKey(const PairingContext& ctx,
                                      std::span<const uint8_t> in);

Bytes EncodeRoleSecret(const PairingContext& ctx, const so::RoleSecret& rs);
so::RoleSecret DecodeRoleSecret(const PairingContext& ctx,
                                std::span<const uint8_t> in);

Bytes EncodeUserPrivateKey(const PairingContext& ctx, const std::string& org,
                           const std::string& id, const Scalar& u);
Scalar DecodeUserPrivateKey(const PairingContext& ctx,
                            std::span<const uint8_t> in);

// Pub (kUserPublicKey), US (kUserSecret), g^delta (kGDelta, empty subject).
Bytes EncodeG1(const PairingContext& ctx, RecordType type,
               const std::string& org, const std::string& subject,
               const G1Element& x);
G1Element DecodeG1(const PairingContext& ctx, RecordType type,
                   std::span<const uint8_t> in);

// Subject is "<user>/<role>".
Bytes EncodeRoleKey(const PairingContext& ctx, const so::RoleKey& rk);
so::RoleKey DecodeRoleKey(const PairingContext& ctx,
                          std::span<const uint8_t> in);

// Stored by the host org; subject is the partner org.
Bytes EncodeReKey(const PairingContext& ctx, const mo::ReKey& rk);
mo::ReKey DecodeReKey(const PairingContext& ctx, std::span<const uint8_t> in);

Bytes EncodeLongTermSecret(const PairingContext& ctx,
                           const mo::LongTermSecret& lts);
mo::LongTermSecret DecodeLongTermSecret(const PairingContext& ctx,
                                        std::span<const uint8_t> in);

// Number of element records of each tag in a key file body.
struct RecordCensus {
  size_t g1 = 0;
  size_t gt = 0;
  size_t scalars = 0;
};
RecordCensus Census(std::span<const uint8_t> in);

Bytes ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::span<const uint8_t> data);

}  // namespace rbe::keyfile
