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

#include <gtest/gtest.h>

#include <algorithm>
#include <string>

#include "rbe/actors/audit.h"
#include "rbe/actors/bulletin_board.h"
#include "rbe/actors/simulator.h"
#include "rbe/error.h"
#include "testing.h"

namespace rbe::actors {
namespace {

using rbe::testing::PlainCtx;

template <typename F>
ErrorCode CodeOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

Bytes Text(std::string_view s) { return Bytes(s.begin(), s.end()); }

size_t CountEvents(const Transcript& t, std::string_view label) {
  return t.Events(label).size();
}

TEST(Scenarios, CannedScenariosRunAndAuditClean) {
  for (const auto& name : CannedScenarioNames()) {
    Transcript t = RunScript(PlainCtx(), CannedScenario(name), 7);
    EXPECT_TRUE(AuditSecretResidency(t).empty()) << name;
    EXPECT_FALSE(CheckPhaseOrder(t).has_value()) << name;
    EXPECT_EQ(CountEvents(t, "decrypt-ok"), 2u) << name;
  }
  EXPECT_THROW(CannedScenario("nope"), Error);
}

TEST(Scenarios, FailuresAreRecordedWithTheirErrorName) {
  Transcript t = RunScript(PlainCtx(), CannedScenario("fig1-single-org"), 7);
  auto failed = t.Events("decrypt-failed");
  ASSERT_EQ(failed.size(), 2u);
  EXPECT_EQ(failed[0]->detail, "UnauthorizedRole");
  EXPECT_EQ(failed[1]->detail, "RevokedUser");
}

TEST(Scenarios, SameSeedGivesIdenticalTranscript) {
  for (const auto& name : CannedScenarioNames()) {
    const std::string a = RunScript(PlainCtx(), CannedScenario(name), 11).Dump();
    const std::string b = RunScript(PlainCtx(), CannedScenario(name), 11).Dump();
    const std::string c = RunScript(PlainCtx(), CannedScenario(name), 12).Dump();
    EXPECT_EQ(a, b) << name;
    EXPECT_NE(a, c) << name;
  }
}

TEST(Scenarios, MismatchedExpectationFails) {
  std::string script = CannedScenario("fig1-single-org");
  script += "decrypt A bob r3 report expect=ok\n";
  EXPECT_EQ(CodeOf([&] { RunScript(PlainCtx(), script, 1); }), ErrorCode::kExpectationFailed);
}

TEST(Scenarios, UnknownCommandIsRejected) {
  EXPECT_EQ(CodeOf([&] { RunScript(PlainCtx(), "init-org A\nfrobnicate A\n", 1); }),
            ErrorCode::kInvalidArgument);
}

TEST(Scenarios, MultiDecryptionWorkIsSplitAcrossParties) {
  Transcript t = RunScript(PlainCtx(), CannedScenario("two-org-consortium"), 3);
  // Sum work from bob's first step up to his decrypt-ok event.
  OpCounts total;
  bool inside = false;
  for (const Entry& e : t.entries()) {
    if (e.phase != Phase::kMultiDecryption) continue;
    if (e.from.name == "bob" && e.type == Entry::Type::kWork) inside = true;
    if (!inside) continue;
    if (e.type == Entry::Type::kWork) total = total + e.counts;
    if (e.label == "decrypt-ok") break;
  }
  // bob's request only: transform, translate, tdk, cloud, finalize
  EXPECT_EQ(total.exp_g1, 4u);
  EXPECT_EQ(total.exp_gt, 2u);
  EXPECT_EQ(total.pairings, 3u);
}

TEST(Audit, LeakedSecretsAreFlagged) {
  const std::string base = CannedScenario("two-org-consortium");
  struct Case {
    std::string line;
    size_t violations;
  };
  const Case cases[] = {
      {"leak A y public-cloud", 1},
      {"leak A delta private-cloud", 1},
      {"leak A sigma private-cloud", 0},  // where sigma belongs
      {"leak A sigma public-cloud", 1},
      {"leak A eta user:alice", 1},
      {"leak A g-delta rm:r1", 0},
      {"leak A g-delta user:alice", 1},
      {"leak A rekey sa:B", 1},
  };
  for (const auto& c : cases) {
    Transcript t = RunScript(PlainCtx(), base + c.line + "\n", 5);
    auto v = AuditSecretResidency(t);
    EXPECT_EQ(v.size(), c.violations) << c.line;
  }
}

TEST(Audit, PermutedTranscriptFailsPhaseOrder) {
  Transcript t = RunScript(PlainCtx(), CannedScenario("fig1-single-org"), 2);
  ASSERT_FALSE(CheckPhaseOrder(t).has_value());

  Transcript early = t;
  auto& e = early.mutable_entries();
  auto first_dec = std::find_if(e.begin(), e.end(),
                                [](const Entry& x) { return x.phase == Phase::kDecryption; });
  ASSERT_NE(first_dec, e.end());
  std::rotate(e.begin(), first_dec, first_dec + 1);
  EXPECT_TRUE(CheckPhaseOrder(early).has_value());

  Transcript reversed = t;
  std::reverse(reversed.mutable_entries().begin(), reversed.mutable_entries().end());
  EXPECT_TRUE(CheckPhaseOrder(reversed).has_value());
}

TEST(Audit, UnclearedSessionIsFlagged) {
  Transcript t = RunScript(PlainCtx(), CannedScenario("fig1-single-org"), 2);
  auto& e = t.mutable_entries();
  auto clear = std::find_if(e.begin(), e.end(),
                            [](const Entry& x) { return x.label == "session-clear"; });
  ASSERT_NE(clear, e.end());
  e.erase(clear);
  EXPECT_EQ(AuditSecretResidency(t).size(), 1u);
}

TEST(Simulator, DirectApiRoundTrip) {
  Simulator sim(PlainCtx(), 99);
  sim.InitOrg("A");
  sim.AddRole("A", "boss", {});
  sim.AddRole("A", "staff", {"boss"});
  sim.AddRole("A", "intern", {"staff"});
  sim.AddRole("A", "audit", {"boss"});
  sim.GenRoleParams("A");
  sim.Register("A", "ann");
  sim.Assign("A", "ann", "staff");
  sim.Encrypt("A", "intern", "memo", Text("hi"));
  EXPECT_FALSE(sim.StoredObject("memo").empty());
  auto ok = sim.Decrypt("A", "ann", "staff", "memo");
  EXPECT_TRUE(ok.ok);
  EXPECT_EQ(ok.plaintext, Text("hi"));
  sim.Encrypt("A", "audit", "books", Text("x"));
  auto denied = sim.Decrypt("A", "ann", "staff", "books");
  EXPECT_FALSE(denied.ok);
  EXPECT_EQ(denied.error, ErrorCode::kUnauthorizedRole);
  // ann never received a key for boss
  EXPECT_EQ(sim.Decrypt("A", "ann", "boss", "books").error, ErrorCode::kUnauthorizedRole);
  EXPECT_THROW(sim.StoredObject("missing"), Error);
}

TEST(Simulator, AuthPolicyGatesAssignment) {
  Simulator sim(PlainCtx(), 1);
  sim.InitOrg("A");
  sim.AddHierarchy("A", SampleHierarchy("A"));
  sim.GenRoleParams("A");
  sim.Register("A", "mallory");
  sim.SetAuthPolicy([](std::string_view, std::string_view id) { return id != "mallory"; });
  EXPECT_EQ(CodeOf([&] { sim.Assign("A", "mallory", "r1"); }),
            ErrorCode::kAuthenticationFailed);
  EXPECT_EQ(sim.transcript().Events("auth-denied").size(), 1u);
}

TEST(Simulator, UnlinkedPartnerHitsMissingRekey) {
  Simulator sim(PlainCtx(), 4);
  for (const char* org : {"A", "B"}) {
    sim.InitOrg(org);
    sim.AddHierarchy(org, SampleHierarchy(org));
    sim.GenRoleParams(org);
  }
  sim.Register("B", "bob");
  sim.Assign("B", "bob", "r1");
  sim.MultiEncrypt("A", "r5", "B", "r6", "plan", Text("p"));
  EXPECT_EQ(sim.Decrypt("B", "bob", "r1", "plan").error, ErrorCode::kMissingRekey);
  sim.Link("B", "A");
  EXPECT_TRUE(sim.Decrypt("B", "bob", "r1", "plan").ok);
}

TEST(Simulator, StepsOutOfOrderAreProtocolErrors) {
  Simulator sim(PlainCtx(), 4);
  EXPECT_THROW(sim.Register("A", "x"), Error);
  sim.InitOrg("A");
  EXPECT_THROW(sim.InitOrg("A"), Error);
}

TEST(BulletinBoard, UserKeySemantics) {
  BulletinBoard board;
  G1Element g = PlainCtx().g();
  board.PublishUserKey("A", "ann", g);
  EXPECT_EQ(CodeOf([&] { board.PublishUserKey("A", "ann", g); }), ErrorCode::kDuplicateId);
  EXPECT_TRUE(board.FindUserKey("A", "ann").has_value());
  EXPECT_FALSE(board.FindUserKey("B", "ann").has_value());
  EXPECT_TRUE(Authenticate(board, "A", "ann"));
  EXPECT_FALSE(Authenticate(board, "A", "bob"));
  EXPECT_EQ(board.Users("A"), std::vector<std::string>{"ann"});
  board.RemoveUserKey("A", "ann");
  EXPECT_FALSE(board.FindUserKey("A", "ann").has_value());
  EXPECT_EQ(CodeOf([&] { board.RemoveUserKey("A", "ann"); }), ErrorCode::kUnknownId);
  // Re-registration after removal is allowed.
  board.PublishUserKey("A", "ann", g);
}

TEST(BulletinBoard, PublicSections) {
  BulletinBoard board;
  EXPECT_FALSE(board.HasOrg("A"));
  EXPECT_EQ(CodeOf([&] { board.Params("A"); }), ErrorCode::kUnknownId);
  Rng rng(3);
  auto init = so::Init(PlainCtx(), "A", rng);
  board.PublishParams(init.pp);
  EXPECT_TRUE(board.HasOrg("A"));
  EXPECT_TRUE(board.Params("A").Y == init.pp.Y);
  auto h = SampleHierarchy("A");
  board.PublishHierarchy(h);
  EXPECT_EQ(board.Hierarchy("A").ToText(), h.ToText());
  auto setup = so::RoleParaGen(PlainCtx(), init.pp, h, rng);
  board.PublishRoleKey(setup.public_keys.at("r3"));
  EXPECT_TRUE(board.RoleKey("A", "r3").pk == setup.public_keys.at("r3").pk);
  EXPECT_EQ(CodeOf([&] { board.RoleKey("A", "r4"); }), ErrorCode::kUnknownRole);
}

TEST(Transcript, NamesAndParsing) {
  EXPECT_EQ(ParseSecretClass("sigma"), SecretClass::kSigma);
  EXPECT_EQ(ParseSecretClass(SecretClassName(SecretClass::kReKey)), SecretClass::kReKey);
  EXPECT_FALSE(ParseSecretClass("bogus").has_value());
  EXPECT_EQ((EntityRef{EntityKind::kUser, "A", "alice"}).ToString(), "User:A/alice");
  EXPECT_EQ(PhaseName(Phase::kMultiDecryption), "MultiDecryption");
}

}  // namespace
}  // namespace rbe::actors
