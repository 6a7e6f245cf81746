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

// In-process, single-threaded simulation of the six parties. Every protocol
// step records the messages it sends, the group work of each party and the
// resulting events in a Transcript. Steps issued out of order throw
// kProtocolOrder.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rbe/actors/bulletin_board.h"
#include "rbe/actors/transcript.h"
#include "rbe/algebra/pairing.h"
#include "rbe/algebra/rng.h"
#include "rbe/error.h"
#include "rbe/hierarchy.h"

namespace rbe::actors {

struct DecryptOutcome {
  bool ok = false;
  std::optional<ErrorCode> error;
  std::string message;
  Bytes plaintext;
};

class Simulator {
 public:
  Simulator(PairingContext ctx, uint64_t seed);
  ~Simulator();
  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  const PairingContext& ctx() const { return ctx_; }
  const Transcript& transcript() const { return transcript_; }
  const BulletinBoard& board() const { return board_; }
  void SetAuthPolicy(AuthPolicy policy) { auth_ = std::move(policy); }

  // System initialization.
  void InitOrg(const std::string& org);
  // Role management. Roles and edges accumulate until GenRoleParams.
  void AddHierarchy(const std::string& org, const RoleHierarchy& h);
  void AddRole(const std::string& org, const std::string& role,
               const std::vector<std::string>& parents);
  void GenRoleParams(const std::string& org);
  // Key generation.
  void Register(const std::string& org, const std::string& id);
  void Assign(const std::string& org, const std::string& id,
              const std::string& role);
  // Storage and access.
  void Encrypt(const std::string& org, const std::string& role,
               const std::string& object, std::span<const uint8_t> message);
  DecryptOutcome Decrypt(const std::string& org, const std::string& id,
                         const std::string& role, const std::string& object);
  void Revoke(const std::string& org, const std::string& id);
  // Multi-organization. `partner` shares its long-term secret with `host`,
  // whose private cloud then holds ReKey_{host,partner}.
  void Link(const std::string& partner, const std::string& host);
  void MultiEncrypt(const std::string& org, const std::string& role,
                    const std::string& partner_org,
                    const std::string& partner_role, const std::string& object,
                    std::span<const uint8_t> message);
  DecryptOutcome MultiDecrypt(const std::string& org, const std::string& id,
                              const std::string& role,
                              const std::string& object);

  // Fault injection for audit tests: sends the named secret of `org` from its
  // administrator to `to`.
  void Leak(const std::string& org, SecretClass secret, const EntityRef& to);

  // Container bytes held by the public cloud.
  const Bytes& StoredObject(const std::string& name) const;

 private:
  struct Org;
  struct UserState;

  Org& GetOrg(const std::string& org, const char* step);
  const Entry& Send(Phase phase, const std::string& org, EntityRef from,
                    EntityRef to, std::string kind, std::vector<Field> fields);
  const Entry& Note(Phase phase, const std::string& org, EntityRef who,
                    std::string what, std::string detail = {});
  template <typename F>
  auto Work(Phase phase, const std::string& org, const EntityRef& who,
            std::string op, F&& f);
  Field F(std::string name, const G1Element& x, SecretClass c = SecretClass::kPublic,
          std::string owner = {}) const;
  Field F(std::string name, const GTElement& x) const;
  Field F(std::string name, const Scalar& x, SecretClass c,
          std::string owner = {}) const;
  DecryptOutcome Fail(Phase phase, const std::string& org,
                      const EntityRef& who, const Error& e);
  DecryptOutcome DecryptOwn(Phase phase, const std::string& org,
                            const std::string& id, const std::string& role,
                            const std::string& object);

  PairingContext ctx_;
  Rng rng_;
  Transcript transcript_;
  BulletinBoard board_;
  AuthPolicy auth_;
  std::map<std::string, std::unique_ptr<Org>> orgs_;
  std::map<std::string, Bytes> objects_;  // public cloud storage
  uint64_t next_session_ = 1;
};

// Script runner. One command per line, '#' starts a comment:
//   init-org ORG
//   add-hierarchy ORG FILE|@sample
//   add-role ORG ROLE [PARENT...]
//   gen-role-params ORG
//   register ORG USER
//   assign ORG USER ROLE
//   encrypt ORG ROLE MESSAGE OBJECT
//   decrypt ORG USER ROLE OBJECT [expect=ok|ERROR]
//   revoke ORG USER
//   link PARTNER HOST
//   mencrypt ORG ROLE PARTNER_ORG PARTNER_ROLE MESSAGE OBJECT
//   mdecrypt ORG USER ROLE OBJECT [expect=ok|ERROR]
//   leak ORG SECRET public-cloud|user:ID|rm:ROLE
// MESSAGE is text:WORD or a file path. Relative paths resolve against
// `base_dir`. A failed expectation throws kExpectationFailed; an unexpected
// protocol error is rethrown.
Transcript RunScript(const PairingContext& ctx, std::string_view script,
                     uint64_t seed, const std::filesystem::path& base_dir = {});

std::vector<std::string> CannedScenarioNames();
// Throws kInvalidArgument for an unknown name.
std::string CannedScenario(std::string_view name);

}  // namespace rbe::actors
