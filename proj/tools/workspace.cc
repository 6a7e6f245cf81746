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

#include "workspace.h"

#include <fstream>
#include <sstream>

#include "rbe/error.h"
#include "rbe/keyfile.h"

namespace rbe::cli {

namespace fs = std::filesystem;
using keyfile::RecordType;

namespace {

// Names become path components; keep them to a conservative alphabet.
void CheckName(std::string_view what, std::string_view name) {
  RBE_ENFORCE(!name.empty(), ErrorCode::kInvalidArgument,
              std::string(what) + " name is empty");
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
    RBE_ENFORCE(ok && name != "." && name != "..", ErrorCode::kInvalidArgument,
                std::string(what) + " name '" + std::string(name) +
                    "' may only use letters, digits, '-', '_' and '.'");
  }
}

Bytes Read(const fs::path& p) { return keyfile::ReadFile(p); }

void Write(const fs::path& p, const Bytes& b) { keyfile::WriteFile(p, b); }

std::string ReadText(const fs::path& p) {
  std::ifstream in(p);
  if (!in.good()) return {};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

Workspace::Workspace(PairingContext ctx, fs::path root)
    : ctx_(std::move(ctx)), root_(std::move(root)) {}

fs::path Workspace::Org(const std::string& org) const {
  CheckName("organization", org);
  return root_ / org;
}

bool Workspace::HasOrg(const std::string& org) const {
  return fs::exists(Org(org) / "public" / "params.rbe");
}

void Workspace::RequireOrg(const std::string& org) const {
  RBE_ENFORCE(HasOrg(org), ErrorCode::kProtocolOrder,
              "organization " + org + " is not initialized");
}

bool Workspace::HasRoles(const std::string& org) const {
  return fs::exists(Org(org) / "public" / "hierarchy.txt");
}

void Workspace::PutParams(const so::PublicParams& pp) {
  Write(Org(pp.org) / "public" / "params.rbe",
        keyfile::EncodePublicParams(ctx_, pp));
}

so::PublicParams Workspace::Params(const std::string& org) const {
  RequireOrg(org);
  return keyfile::DecodePublicParams(ctx_, Read(Org(org) / "public" / "params.rbe"));
}

void Workspace::PutHierarchy(const RoleHierarchy& h) {
  std::string text = h.ToText();
  Write(Org(h.org()) / "public" / "hierarchy.txt", Bytes(text.begin(), text.end()));
}

RoleHierarchy Workspace::Hierarchy(const std::string& org) const {
  RBE_ENFORCE(HasRoles(org), ErrorCode::kProtocolOrder,
              "role parameters for " + org + " not generated");
  return RoleHierarchy::Parse(org, ReadText(Org(org) / "public" / "hierarchy.txt"));
}

void Workspace::PutRolePublicKey(const so::RolePublicKey& rpk) {
  CheckName("role", rpk.role.name);
  Write(Org(rpk.role.org) / "public" / "roles" / (rpk.role.name + ".rbe"),
        keyfile::EncodeRolePublicKey(ctx_, rpk));
}

so::RolePublicKey Workspace::RolePublicKey(const std::string& org,
                                           const std::string& role) const {
  CheckName("role", role);
  fs::path p = Org(org) / "public" / "roles" / (role + ".rbe");
  RBE_ENFORCE(fs::exists(p), ErrorCode::kUnknownRole,
              "no public key for role " + org + "/" + role);
  return keyfile::DecodeRolePublicKey(ctx_, Read(p));
}

void Workspace::PutUserKey(const std::string& org, const std::string& id,
                           const G1Element& pub) {
  CheckName("user", id);
  fs::path p = Org(org) / "public" / "users" / (id + ".rbe");
  RBE_ENFORCE(!fs::exists(p), ErrorCode::kDuplicateId,
              "user " + id + " already registered in " + org);
  Write(p, keyfile::EncodeG1(ctx_, RecordType::kUserPublicKey, org, id, pub));
}

std::optional<G1Element> Workspace::FindUserKey(std::string_view org,
                                                std::string_view id) const {
  fs::path p = Org(std::string(org)) / "public" / "users" / (std::string(id) + ".rbe");
  if (!fs::exists(p)) return std::nullopt;
  return keyfile::DecodeG1(ctx_, RecordType::kUserPublicKey, Read(p));
}

void Workspace::RemoveUserKey(std::string_view org, std::string_view id) {
  CheckName("user", id);
  fs::path p = Org(std::string(org)) / "public" / "users" / (std::string(id) + ".rbe");
  RBE_ENFORCE(fs::exists(p), ErrorCode::kUnknownId,
              "no public key for user " + std::string(id) + " in " +
                  std::string(org));
  fs::remove(p);
}

void Workspace::PutMaster(const std::string& org, const so::MasterSecret& msk,
                          const so::RoleParams& params) {
  Write(Org(org) / "admin" / "master.rbe",
        keyfile::EncodeMasterSecret(ctx_, org, msk, params));
}

std::pair<so::MasterSecret, so::RoleParams> Workspace::Master(
    const std::string& org) const {
  RequireOrg(org);
  return keyfile::DecodeMasterSecret(ctx_, Read(Org(org) / "admin" / "master.rbe"));
}

std::string Workspace::Staged(const std::string& org) const {
  return ReadText(Org(org) / "admin" / "staged.txt");
}

void Workspace::AppendStaged(const std::string& org, const std::string& text) {
  fs::path p = Org(org) / "admin" / "staged.txt";
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::app);
  RBE_ENFORCE(out.good(), ErrorCode::kIo, "cannot write " + p.string());
  out << text;
}

void Workspace::PutGDelta(const std::string& org, const G1Element& g_delta) {
  Write(Org(org) / "managers" / "g_delta.rbe",
        keyfile::EncodeG1(ctx_, RecordType::kGDelta, org, "", g_delta));
}

G1Element Workspace::GDelta(const std::string& org) const {
  return keyfile::DecodeG1(ctx_, RecordType::kGDelta,
                           Read(Org(org) / "managers" / "g_delta.rbe"));
}

void Workspace::PutRoleSecret(const so::RoleSecret& rs) {
  CheckName("role", rs.role.name);
  Write(Org(rs.role.org) / "managers" / (rs.role.name + ".rbe"),
        keyfile::EncodeRoleSecret(ctx_, rs));
}

so::RoleSecret Workspace::RoleSecret(const std::string& org,
                                     const std::string& role) const {
  CheckName("role", role);
  fs::path p = Org(org) / "managers" / (role + ".rbe");
  RBE_ENFORCE(fs::exists(p), ErrorCode::kUnknownRole,
              "no role manager for " + org + "/" + role);
  return keyfile::DecodeRoleSecret(ctx_, Read(p));
}

void Workspace::PutUserSecret(const std::string& org, const std::string& id,
                              const G1Element& us) {
  CheckName("user", id);
  Write(Org(org) / "private-cloud" / (id + ".rbe"),
        keyfile::EncodeG1(ctx_, RecordType::kUserSecret, org, id, us));
}

G1Element Workspace::UserSecret(const std::string& org,
                                const std::string& id) const {
  CheckName("user", id);
  fs::path p = Org(org) / "private-cloud" / (id + ".rbe");
  RBE_ENFORCE(fs::exists(p), ErrorCode::kUnknownId,
              "no user secret for " + id + " in " + org);
  return keyfile::DecodeG1(ctx_, RecordType::kUserSecret, Read(p));
}

void Workspace::PutReKey(const mo::ReKey& rk) {
  Write(Org(rk.host) / "private-cloud" / "rekeys" / (rk.partner + ".rbe"),
        keyfile::EncodeReKey(ctx_, rk));
}

bool Workspace::HasReKey(const std::string& host,
                         const std::string& partner) const {
  CheckName("organization", partner);
  return fs::exists(Org(host) / "private-cloud" / "rekeys" / (partner + ".rbe"));
}

mo::ReKey Workspace::ReKey(const std::string& host,
                           const std::string& partner) const {
  RBE_ENFORCE(HasReKey(host, partner), ErrorCode::kMissingRekey,
              "no re-encryption key from " + host + " to " + partner);
  return keyfile::DecodeReKey(
      ctx_, Read(Org(host) / "private-cloud" / "rekeys" / (partner + ".rbe")));
}

void Workspace::PutUserPrivate(const std::string& org, const std::string& id,
                               const Scalar& u) {
  CheckName("user", id);
  Write(Org(org) / "users" / id / "private.rbe",
        keyfile::EncodeUserPrivateKey(ctx_, org, id, u));
}

Scalar Workspace::UserPrivate(const std::string& org,
                              const std::string& id) const {
  CheckName("user", id);
  fs::path p = Org(org) / "users" / id / "private.rbe";
  RBE_ENFORCE(fs::exists(p), ErrorCode::kUnknownId,
              "user " + id + " not registered in " + org);
  return keyfile::DecodeUserPrivateKey(ctx_, Read(p));
}

void Workspace::PutRoleKey(const std::string& org, const so::RoleKey& rk) {
  CheckName("user", rk.user);
  CheckName("role", rk.role.name);
  Write(Org(org) / "users" / rk.user / "roles" / (rk.role.name + ".rbe"),
        keyfile::EncodeRoleKey(ctx_, rk));
}

std::optional<so::RoleKey> Workspace::RoleKey(const std::string& org,
                                              const std::string& id,
                                              const std::string& role) const {
  CheckName("user", id);
  CheckName("role", role);
  fs::path p = Org(org) / "users" / id / "roles" / (role + ".rbe");
  if (!fs::exists(p)) return std::nullopt;
  return keyfile::DecodeRoleKey(ctx_, Read(p));
}

}  // namespace rbe::cli
