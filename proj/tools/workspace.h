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

// On-disk state for the command-line tool. One directory per organization:
//
//   <org>/public/params.rbe           bulletin board: public parameters
//   <org>/public/hierarchy.txt        bulletin board: role hierarchy
//   <org>/public/roles/<role>.rbe     bulletin board: role public keys
//   <org>/public/users/<id>.rbe       bulletin board: user public keys
//   <org>/admin/master.rbe            y, delta, sigma, eta and every t
//   <org>/admin/staged.txt            roles and edges awaiting gen-role-params
//   <org>/managers/g_delta.rbe        role managers: g^delta
//   <org>/managers/<role>.rbe         role managers: role secrets
//   <org>/private-cloud/<id>.rbe      user secrets
//   <org>/private-cloud/rekeys/<partner>.rbe
//   <org>/users/<id>/private.rbe      user private key
//   <org>/users/<id>/roles/<role>.rbe role keys

#include <filesystem>
#include <optional>
#include <string>

#include "rbe/algebra/pairing.h"
#include "rbe/hierarchy.h"
#include "rbe/mo_rbe.h"
#include "rbe/so_rbe.h"

namespace rbe::cli {

class Workspace : public so::UserKeyDirectory {
 public:
  Workspace(PairingContext ctx, std::filesystem::path root);

  const PairingContext& ctx() const { return ctx_; }

  bool HasOrg(const std::string& org) const;
  void RequireOrg(const std::string& org) const;  // kProtocolOrder if absent
  bool HasRoles(const std::string& org) const;

  // Bulletin board.
  void PutParams(const so::PublicParams& pp);
  so::PublicParams Params(const std::string& org) const;
  void PutHierarchy(const RoleHierarchy& h);
  RoleHierarchy Hierarchy(const std::string& org) const;
  void PutRolePublicKey(const so::RolePublicKey& rpk);
  so::RolePublicKey RolePublicKey(const std::string& org,
                                  const std::string& role) const;
  void PutUserKey(const std::string& org, const std::string& id,
                  const G1Element& pub);
  std::optional<G1Element> FindUserKey(std::string_view org,
                                       std::string_view id) const override;
  void RemoveUserKey(std::string_view org, std::string_view id) override;

  // Administrator.
  void PutMaster(const std::string& org, const so::MasterSecret& msk,
                 const so::RoleParams& params);
  std::pair<so::MasterSecret, so::RoleParams> Master(
      const std::string& org) const;
  std::string Staged(const std::string& org) const;
  void AppendStaged(const std::string& org, const std::string& text);

  // Role managers.
  void PutGDelta(const std::string& org, const G1Element& g_delta);
  G1Element GDelta(const std::string& org) const;
  void PutRoleSecret(const so::RoleSecret& rs);
  so::RoleSecret RoleSecret(const std::string& org,
                            const std::string& role) const;

  // Private cloud.
  void PutUserSecret(const std::string& org, const std::string& id,
                     const G1Element& us);
  G1Element UserSecret(const std::string& org, const std::string& id) const;
  void PutReKey(const mo::ReKey& rk);
  // Throws kMissingRekey.
  mo::ReKey ReKey(const std::string& host, const std::string& partner) const;
  bool HasReKey(const std::string& host, const std::string& partner) const;

  // Users.
  void PutUserPrivate(const std::string& org, const std::string& id,
                      const Scalar& u);
  Scalar UserPrivate(const std::string& org, const std::string& id) const;
  void PutRoleKey(const std::string& org, const so::RoleKey& rk);
  std::optional<so::RoleKey> RoleKey(const std::string& org,
                                     const std::string& id,
                                     const std::string& role) const;

 private:
  std::filesystem::path Org(const std::string& org) const;

  PairingContext ctx_;
  std::filesystem::path root_;
};

}  // namespace rbe::cli
