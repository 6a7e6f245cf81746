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

#include "rbe/actors/bulletin_board.h"

#include <mutex>

#include "rbe/error.h"

namespace rbe::actors {

const BulletinBoard::Section& BulletinBoard::Get(std::string_view org) const {
  auto it = sections_.find(org);
  RBE_ENFORCE(it != sections_.end(), ErrorCode::kUnknownId,
              "organization " + std::string(org) + " not on the board");
  return it->second;
}

void BulletinBoard::PublishParams(const so::PublicParams& pp) {
  std::unique_lock lock(mu_);
  sections_[pp.org].params = pp;
}

bool BulletinBoard::HasOrg(std::string_view org) const {
  std::shared_lock lock(mu_);
  auto it = sections_.find(org);
  return it != sections_.end() && it->second.params.has_value();
}

so::PublicParams BulletinBoard::Params(std::string_view org) const {
  std::shared_lock lock(mu_);
  const Section& s = Get(org);
  RBE_ENFORCE(s.params.has_value(), ErrorCode::kUnknownId,
              "no public parameters for " + std::string(org));
  return *s.params;
}

void BulletinBoard::PublishHierarchy(const RoleHierarchy& h) {
  std::unique_lock lock(mu_);
  sections_[h.org()].hierarchy = h;
}

RoleHierarchy BulletinBoard::Hierarchy(std::string_view org) const {
  std::shared_lock lock(mu_);
  const Section& s = Get(org);
  RBE_ENFORCE(s.hierarchy.has_value(), ErrorCode::kUnknownId,
              "no role hierarchy for " + std::string(org));
  return *s.hierarchy;
}

void BulletinBoard::PublishRoleKey(const so::RolePublicKey& rpk) {
  std::unique_lock lock(mu_);
  sections_[rpk.role.org].role_keys.insert_or_assign(rpk.role.name, rpk);
}

so::RolePublicKey BulletinBoard::RoleKey(std::string_view org,
                                         std::string_view role) const {
  std::shared_lock lock(mu_);
  const Section& s = Get(org);
  auto it = s.role_keys.find(role);
  RBE_ENFORCE(it != s.role_keys.end(), ErrorCode::kUnknownRole,
              "no public key for role " + std::string(org) + "/" +
                  std::string(role));
  return it->second;
}

void BulletinBoard::PublishUserKey(std::string_view org, std::string_view id,
                                   const G1Element& pub) {
  std::unique_lock lock(mu_);
  auto& keys = sections_[std::string(org)].user_keys;
  RBE_ENFORCE(keys.find(id) == keys.end(), ErrorCode::kDuplicateId,
              "user " + std::string(id) + " already registered in " +
                  std::string(org));
  keys.emplace(std::string(id), pub);
}

std::optional<G1Element> BulletinBoard::FindUserKey(std::string_view org,
                                                    std::string_view id) const {
  std::shared_lock lock(mu_);
  auto sit = sections_.find(org);
  if (sit == sections_.end()) return std::nullopt;
  auto it = sit->second.user_keys.find(id);
  if (it == sit->second.user_keys.end()) return std::nullopt;
  return it->second;
}

void BulletinBoard::RemoveUserKey(std::string_view org, std::string_view id) {
  std::unique_lock lock(mu_);
  auto sit = sections_.find(org);
  RBE_ENFORCE(sit != sections_.end(), ErrorCode::kUnknownId,
              "organization " + std::string(org) + " not on the board");
  auto it = sit->second.user_keys.find(id);
  RBE_ENFORCE(it != sit->second.user_keys.end(), ErrorCode::kUnknownId,
              "no public key for user " + std::string(id) + " in " +
                  std::string(org));
  sit->second.user_keys.erase(it);
}

std::vector<std::string> BulletinBoard::Users(std::string_view org) const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  auto sit = sections_.find(org);
  if (sit == sections_.end()) return out;
  for (const auto& [id, pub] : sit->second.user_keys) out.push_back(id);
  return out;
}

bool Authenticate(const BulletinBoard& board, std::string_view org,
                  std::string_view user_id) {
  return board.FindUserKey(org, user_id).has_value();
}

}  // namespace rbe::actors
