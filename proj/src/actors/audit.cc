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

#include "rbe/actors/audit.h"

#include <map>
#include <set>

namespace rbe::actors {

namespace {

bool Is(const EntityRef& e, EntityKind k) { return e.kind == k; }

bool SameOrg(const Entry& m) { return m.from.org == m.to.org; }

// Who may send a field of a given class to whom.
bool Allowed(const Entry& m, const Field& f) {
  using K = EntityKind;
  switch (f.secret) {
    case SecretClass::kPublic:
      return true;
    case SecretClass::kMasterY:
    case SecretClass::kMasterDelta:
    case SecretClass::kRoleParam:
    case SecretClass::kBlinding:
    case SecretClass::kSessionKey:
      return false;
    case SecretClass::kSigma:
    case SecretClass::kEta:
    case SecretClass::kReKey:
      return Is(m.from, K::kSystemAdministrator) &&
             Is(m.to, K::kPrivateCloud) && SameOrg(m);
    case SecretClass::kGDelta:
      return Is(m.from, K::kSystemAdministrator) &&
             Is(m.to, K::kRoleManager) && SameOrg(m);
    case SecretClass::kRoleSecret:
      return Is(m.from, K::kSystemAdministrator) &&
             Is(m.to, K::kRoleManager) && SameOrg(m) && m.to.name == f.owner;
    case SecretClass::kUserSecret:
      return SameOrg(m) && ((Is(m.from, K::kSystemAdministrator) &&
                             Is(m.to, K::kPrivateCloud)) ||
                            (Is(m.from, K::kPrivateCloud) &&
                             Is(m.to, K::kRoleManager)));
    case SecretClass::kUserPrivate:
      return Is(m.from, K::kSystemAdministrator) && Is(m.to, K::kUser) &&
             SameOrg(m) && m.to.name == f.owner;
    case SecretClass::kRoleKey:
      return Is(m.from, K::kRoleManager) && Is(m.to, K::kUser) &&
             SameOrg(m) && m.to.name == f.owner;
    case SecretClass::kLongTermSecret:
      return Is(m.from, K::kSystemAdministrator) &&
             Is(m.to, K::kSystemAdministrator) && !SameOrg(m) &&
             m.from.org == f.owner;
  }
  return false;
}

using PhaseSet = std::set<Phase>;

PhaseSet Prerequisites(Phase p) {
  switch (p) {
    case Phase::kSystemInit: return {};
    case Phase::kManageRole:
    case Phase::kKeyGeneration:
    case Phase::kAgreement:
    case Phase::kFaultInjection:
      return {Phase::kSystemInit};
    case Phase::kEncryption:
    case Phase::kRolePubKeyUpdate:
    case Phase::kMultiEncryption:
      return {Phase::kManageRole};
    case Phase::kDecryption:
    case Phase::kMultiDecryption:
    case Phase::kUserRevocation:
      return {Phase::kKeyGeneration};
  }
  return {};
}

}  // namespace

std::vector<Violation> AuditSecretResidency(const Transcript& t) {
  std::vector<Violation> out;
  std::map<std::pair<std::string, std::string>, uint64_t> open_sessions;
  for (const auto& e : t.entries()) {
    if (e.type == Entry::Type::kMessage) {
      for (const auto& f : e.fields) {
        if (Allowed(e, f)) continue;
        out.push_back({e.seq, std::string(SecretClassName(f.secret)),
                       f.name + " sent " + e.from.ToString() + " -> " +
                           e.to.ToString()});
      }
    } else if (e.type == Entry::Type::kEvent) {
      auto key = std::make_pair(e.from.ToString(), e.detail);
      if (e.label == "session-put") {
        open_sessions[key] = e.seq;
      } else if (e.label == "session-clear") {
        open_sessions.erase(key);
      }
    }
  }
  for (const auto& [key, seq] : open_sessions)
    out.push_back({seq, "v",
                   "blinding value " + key.second + " retained by " + key.first});
  return out;
}

std::optional<Violation> CheckPhaseOrder(const Transcript& t) {
  std::map<std::string, PhaseSet> done;
  bool any_encryption = false;
  bool any_multi_encryption = false;
  for (const auto& e : t.entries()) {
    const PhaseSet& have = done[e.org];
    for (Phase need : Prerequisites(e.phase)) {
      if (!have.contains(need))
        return Violation{e.seq, std::string(PhaseName(e.phase)),
                         "org " + e.org + " has not completed " +
                             std::string(PhaseName(need))};
    }
    if (e.phase == Phase::kDecryption && !any_encryption &&
        !any_multi_encryption)
      return Violation{e.seq, "Decryption", "no ciphertext stored yet"};
    if (e.phase == Phase::kMultiDecryption && !any_multi_encryption)
      return Violation{e.seq, "MultiDecryption",
                       "no multi-organization ciphertext stored yet"};
    if (e.phase == Phase::kEncryption) any_encryption = true;
    if (e.phase == Phase::kMultiEncryption) any_multi_encryption = true;
    done[e.org].insert(e.phase);
  }
  return std::nullopt;
}

}  // namespace rbe::actors
