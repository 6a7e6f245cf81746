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

#include "rbe/actors/transcript.h"

#include <array>
#include <cstdio>
#include <map>
#include <sstream>

namespace rbe::actors {

namespace {

constexpr std::array<std::pair<SecretClass, std::string_view>, 15> kSecrets{{
    {SecretClass::kPublic, "public"},
    {SecretClass::kMasterY, "y"},
    {SecretClass::kMasterDelta, "delta"},
    {SecretClass::kRoleParam, "t"},
    {SecretClass::kSigma, "sigma"},
    {SecretClass::kEta, "eta"},
    {SecretClass::kGDelta, "g-delta"},
    {SecretClass::kRoleSecret, "rs"},
    {SecretClass::kUserPrivate, "u"},
    {SecretClass::kUserSecret, "us"},
    {SecretClass::kRoleKey, "rk"},
    {SecretClass::kBlinding, "v"},
    {SecretClass::kLongTermSecret, "lts"},
    {SecretClass::kReKey, "rekey"},
    {SecretClass::kSessionKey, "session-key"},
}};

std::string Hex(const Bytes& b) {
  static const char* kDigits = "0123456789abcdef";
  std::string s;
  s.reserve(b.size() * 2);
  for (uint8_t c : b) {
    s.push_back(kDigits[c >> 4]);
    s.push_back(kDigits[c & 15]);
  }
  return s;
}

}  // namespace

std::string_view EntityKindName(EntityKind kind) {
  switch (kind) {
    case EntityKind::kSystemAdministrator: return "SA";
    case EntityKind::kRoleManager: return "RM";
    case EntityKind::kPrivateCloud: return "PrivateCloud";
    case EntityKind::kPublicCloud: return "PublicCloud";
    case EntityKind::kDataOwner: return "Owner";
    case EntityKind::kUser: return "User";
    case EntityKind::kBulletinBoard: return "Board";
  }
  return "?";
}

std::string EntityRef::ToString() const {
  std::string s(EntityKindName(kind));
  if (!org.empty()) s += ":" + org;
  if (!name.empty()) s += "/" + name;
  return s;
}

std::string_view PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kSystemInit: return "SystemInit";
    case Phase::kManageRole: return "ManageRole";
    case Phase::kKeyGeneration: return "KeyGeneration";
    case Phase::kEncryption: return "Encryption";
    case Phase::kDecryption: return "Decryption";
    case Phase::kUserRevocation: return "UserRevocation";
    case Phase::kAgreement: return "Agreement";
    case Phase::kRolePubKeyUpdate: return "RolePubKeyUpdate";
    case Phase::kMultiEncryption: return "MultiEncryption";
    case Phase::kMultiDecryption: return "MultiDecryption";
    case Phase::kFaultInjection: return "FaultInjection";
  }
  return "?";
}

std::string_view SecretClassName(SecretClass c) {
  for (const auto& [k, name] : kSecrets)
    if (k == c) return name;
  return "?";
}

std::optional<SecretClass> ParseSecretClass(std::string_view name) {
  for (const auto& [k, n] : kSecrets)
    if (n == name) return k;
  return std::nullopt;
}

const Entry& Transcript::Add(Entry e) {
  e.seq = entries_.size() + 1;
  entries_.push_back(std::move(e));
  return entries_.back();
}

std::vector<const Entry*> Transcript::Messages() const {
  std::vector<const Entry*> out;
  for (const auto& e : entries_)
    if (e.type == Entry::Type::kMessage) out.push_back(&e);
  return out;
}

std::vector<const Entry*> Transcript::Work() const {
  std::vector<const Entry*> out;
  for (const auto& e : entries_)
    if (e.type == Entry::Type::kWork) out.push_back(&e);
  return out;
}

std::vector<const Entry*> Transcript::Events(std::string_view label) const {
  std::vector<const Entry*> out;
  for (const auto& e : entries_)
    if (e.type == Entry::Type::kEvent && (label.empty() || e.label == label))
      out.push_back(&e);
  return out;
}

std::vector<std::pair<std::string, OpCounts>> Transcript::WorkByEntity(
    std::optional<Phase> phase) const {
  std::map<std::string, OpCounts> sum;
  for (const auto& e : entries_) {
    if (e.type != Entry::Type::kWork) continue;
    if (phase && e.phase != *phase) continue;
    auto& c = sum[e.from.ToString()];
    c = c + e.counts;
  }
  return {sum.begin(), sum.end()};
}

std::string Transcript::Dump() const {
  std::ostringstream os;
  os << "# rbe transcript seed=" << seed_ << " entries=" << entries_.size()
     << "\n";
  for (const auto& e : entries_) {
    char seq[16];
    std::snprintf(seq, sizeof seq, "%04llu", static_cast<unsigned long long>(e.seq));
    os << seq << " " << PhaseName(e.phase) << " org=" << e.org << " ";
    switch (e.type) {
      case Entry::Type::kMessage:
        os << "msg " << e.from.ToString() << " -> " << e.to.ToString() << " "
           << e.label << "\n";
        for (const auto& f : e.fields) {
          os << "       " << f.name << " [" << SecretClassName(f.secret);
          if (!f.owner.empty()) os << " of " << f.owner;
          os << "] " << Hex(f.bytes) << "\n";
        }
        break;
      case Entry::Type::kWork:
        os << "work " << e.from.ToString() << " " << e.label << " "
           << e.counts.ToString() << "\n";
        break;
      case Entry::Type::kEvent:
        os << "event " << e.from.ToString() << " " << e.label;
        if (!e.detail.empty()) os << " " << e.detail;
        os << "\n";
        break;
    }
  }
  return os.str();
}

}  // namespace rbe::actors
