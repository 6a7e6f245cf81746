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

// Multi-organization extension: a data owner of organization k encrypts for
// role i of k and role j of a partner k'. Partner users decrypt through a
// three-party flow in which k's private cloud re-encrypts C1 under a one-time
// re-encryption key and k''s private cloud lifts the user's keys by sigma_k'.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "rbe/so_rbe.h"

namespace rbe::mo {

struct JointRolePublicKey {
  so::RolePublicKey encryptor;  // role i of org k
  so::RolePublicKey partner;    // role j of org k'
};

// Pure concatenation; no group operations. Throws kSameOrganization when both
// roles belong to one organization.
JointRolePublicKey RolePubKeyUpdate(const so::RolePublicKey& own,
                                    const so::RolePublicKey& partner);

struct MultiKemCiphertext {
  RoleId role;          // r_i in org k
  RoleId partner_role;  // r_j in org k'
  GTElement c1;         // K (Y_k / V_k)^d
  G1Element c2;         // h_k^d
  G1Element c2_partner;      // h_k'^d
  G1Element c_role;          // PK_i^d
  G1Element c_role_partner;  // PK'_j^d
  std::map<std::string, G1Element> c3;          // over A_i
  std::map<std::string, G1Element> c3_partner;  // over A_j

  const std::string& org() const { return role.org; }
  const std::string& partner_org() const { return partner_role.org; }
  size_t g1_count() const { return 4 + c3.size() + c3_partner.size(); }
  size_t gt_count() const { return 1; }

  // Org-k view, decryptable with the single-organization flow.
  so::KemCiphertext OwnView() const;
};

struct MultiEncapsulation {
  GTElement key;
  MultiKemCiphertext ct;
};

MultiEncapsulation MultiKemEncrypt(const PairingContext& ctx,
                                   const so::PublicParams& pp,
                                   const so::PublicParams& partner_pp,
                                   const JointRolePublicKey& joint, Rng& rng);

/// g^((y - delta) sigma) of the issuing organization.
struct LongTermSecret {
  std::string issuer;
  G1Element lts;
};

/// ReKey_{k,k'} = g^((y_k' - delta_k') sigma_k' - (y_k - delta_k)).
struct ReKey {
  std::string host;     // k: data-hosting org, keeps the key
  std::string partner;  // k': org whose users are admitted
  G1Element key;
};

LongTermSecret LongKeyShare(const PairingContext& ctx, std::string issuer,
                            const so::MasterSecret& msk);
ReKey MakeRekey(const PairingContext& ctx, std::string host,
                const so::MasterSecret& host_msk, const LongTermSecret& lts);

/// Per-organization private-cloud store of re-encryption keys.
class RekeyStore {
 public:
  // Returns true when an existing key for the pair was replaced.
  bool Put(ReKey key);
  // Throws kMissingRekey.
  const ReKey& Get(std::string_view host, std::string_view partner) const;
  bool Contains(std::string_view host, std::string_view partner) const;
  const std::map<std::pair<std::string, std::string>, ReKey>& entries() const {
    return keys_;
  }

 private:
  std::map<std::pair<std::string, std::string>, ReKey> keys_;
};

// Host private cloud: C1' = C1 * e(rekey, C2^(1/eta_k)). One G1
// exponentiation and one pairing.
GTElement TranslateC1(const PairingContext& ctx, const GTElement& c1,
                      const G1Element& c2, const ReKey& rekey,
                      const Scalar& eta_host);

struct TemporaryDecryptionKey {
  RoleId role;
  std::string user;
  G1Element tdk;         // trk^sigma_k'
  G1Element blind_pub;   // Pub^sigma_k'
};

// Partner private cloud. `pub` comes from the user's home bulletin board;
// nullopt (revoked) throws kRevokedUser before any exponentiation.
TemporaryDecryptionKey MakeTdk(const PairingContext& ctx,
                               const so::TransformedRoleKey& trk,
                               const std::optional<G1Element>& pub,
                               const Scalar& sigma_partner);

// Public cloud: two pairings over the partner-side components.
so::PartialDecryption MultiCloudPartialDec(
    const PairingContext& ctx, const MultiKemCiphertext& ct,
    const TemporaryDecryptionKey& tdk, const RoleHierarchy& partner_h,
    so::RoleGate gate = so::RoleGate::kEnforce);

GTElement MultiUserFinalize(const PairingContext& ctx,
                            const GTElement& c1_translated,
                            const so::PartialDecryption& pd, const Scalar& v,
                            const Scalar& u);

}  // namespace rbe::mo
