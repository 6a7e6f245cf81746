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

#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "rbe/hierarchy.h"
#include "rbe/so_rbe.h"

namespace rbe::actors {

/// Public registry, one section per organization: public parameters, role
/// public keys, the (public) role hierarchy and user public keys. Writes are
/// serialized; readers always observe completed writes. Accessors return
/// copies.
class BulletinBoard : public so::UserKeyDirectory {
 public:
  void PublishParams(const so::PublicParams& pp);
  bool HasOrg(std::string_view org) const;
  so::PublicParams Params(std::string_view org) const;

  void PublishHierarchy(const RoleHierarchy& h);
  RoleHierarchy Hierarchy(std::string_view org) const;

  void PublishRoleKey(const so::RolePublicKey& rpk);
  so::RolePublicKey RoleKey(std::string_view org, std::string_view role) const;

  // Throws kDuplicateId if a key for the id is present.
  void PublishUserKey(std::string_view org, std::string_view id,
                      const G1Element& pub);
  std::optional<G1Element> FindUserKey(std::string_view org,
                                       std::string_view id) const override;
  void RemoveUserKey(std::string_view org, std::string_view id) override;
  std::vector<std::string> Users(std::string_view org) const;

 private:
  struct Section {
    std::optional<so::PublicParams> params;
    std::optional<RoleHierarchy> hierarchy;
    std::map<std::string, so::RolePublicKey, std::less<>> role_keys;
    std::map<std::string, G1Element, std::less<>> user_keys;
  };

  const Section& Get(std::string_view org) const;

  mutable std::shared_mutex mu_;
  std::map<std::string, Section, std::less<>> sections_;
};

// Pluggable authentication used before releasing user secrets.
using AuthPolicy =
    std::function<bool(std::string_view org, std::string_view user_id)>;

// Stub: passes iff the user's key is currently on the board (registered and
// not revoked).
bool Authenticate(const BulletinBoard& board, std::string_view org,
                  std::string_view user_id);

}  // namespace rbe::actors
