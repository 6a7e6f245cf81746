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

// Ordered record of a simulated run: messages between entities, the group
// work each entity performed, and notable events (board writes, session-store
// activity, outcomes). Nothing time-dependent is recorded, so two runs with
// the same seed produce byte-identical dumps.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rbe/algebra/pairing.h"

namespace rbe::actors {

enum class EntityKind {
  kSystemAdministrator,
  kRoleManager,
  kPrivateCloud,
  kPublicCloud,
  kDataOwner,
  kUser,
  kBulletinBoard,
};

std::string_view EntityKindName(EntityKind kind);

struct EntityRef {
  EntityKind kind = EntityKind::kPublicCloud;
  std::string org;   // empty for the public cloud
  std::string name;  // role, user id or owner name; empty for org-wide

  bool operator==(const EntityRef&) const = default;
  std::string ToString() const;
};

enum class Phase {
  kSystemInit,
  kManageRole,
  kKeyGeneration,
  kEncryption,
  kDecryption,
  kUserRevocation,
  kAgreement,
  kRolePubKeyUpdate,
  kMultiEncryption,
  kMultiDecryption,
  kFaultInjection,
};

std::string_view PhaseName(Phase phase);

enum class SecretClass {
  kPublic,
  kMasterY,
  kMasterDelta,
  kRoleParam,  // t_l
  kSigma,
  kEta,
  kGDelta,
  kRoleSecret,   // RS
  kUserPrivate,  // u
  kUserSecret,   // US
  kRoleKey,      // RK
  kBlinding,     // v
  kLongTermSecret,
  kReKey,
  kSessionKey,  // K or the derived DEK
};

std::string_view SecretClassName(SecretClass c);
std::optional<SecretClass> ParseSecretClass(std::string_view name);

struct Field {
  std::string name;
  SecretClass secret = SecretClass::kPublic;
  std::string owner;  // user id or role the secret belongs to, if any
  Bytes bytes;
};

struct Entry {
  enum class Type { kMessage, kWork, kEvent };

  Type type = Type::kEvent;
  uint64_t seq = 0;
  Phase phase = Phase::kSystemInit;
  std::string org;  // organization whose protocol step this belongs to
  EntityRef from;   // sender, worker or subject of the event
  EntityRef to;     // messages only
  std::string label;
  std::vector<Field> fields;  // messages only
  OpCounts counts;            // work only
  std::string detail;         // events only
};

class Transcript {
 public:
  explicit Transcript(uint64_t seed = 0) : seed_(seed) {}

  uint64_t seed() const { return seed_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::vector<Entry>& mutable_entries() { return entries_; }

  const Entry& Add(Entry e);

  std::vector<const Entry*> Messages() const;
  std::vector<const Entry*> Work() const;
  std::vector<const Entry*> Events(std::string_view label = {}) const;

  // Sum of work counters per entity, keyed by EntityRef::ToString().
  std::vector<std::pair<std::string, OpCounts>> WorkByEntity(
      std::optional<Phase> phase = std::nullopt) const;

  std::string Dump() const;

 private:
  uint64_t seed_;
  std::vector<Entry> entries_;
};

}  // namespace rbe::actors
