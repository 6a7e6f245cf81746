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

#include "rbe/actors/bulletin_board.h"
#include "rbe/error.h"
#include "rbe/mo_rbe.h"
#include "testing.h"

namespace rbe {
namespace {

using testing::Inv;
using testing::IsG1Power;
using testing::IsGtPower;
using testing::LedgerCtx;
using testing::Mod;

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

struct Org {
  so::InitResult init;
  RoleHierarchy h;
  so::RoleSetup setup;
};

// Org A hosts the data, org B is the partner whose users are admitted.
class MoRbeTest : public ::testing::Test {
 protected:
  void SetUp() override {
    a_ = MakeOrg("A");
    b_ = MakeOrg("B");
    rekeys_.Put(mo::MakeRekey(ctx(), "A", a_.init.msk,
                              mo::LongKeyShare(ctx(), "B", b_.init.msk)));
  }

  const PairingContext& ctx() const { return LedgerCtx(); }

  Org MakeOrg(const std::string& name) {
    Org o;
    o.init = so::Init(ctx(), name, rng_);
    o.h = SampleHierarchy(name);
    o.setup = so::RoleParaGen(ctx(), o.init.pp, o.h, rng_);
    return o;
  }

  mo::MultiEncapsulation Encrypt(const std::string& ri, const std::string& rj) {
    auto joint = mo::RolePubKeyUpdate(a_.setup.public_keys.at(ri),
                                      b_.setup.public_keys.at(rj));
    return mo::MultiKemEncrypt(ctx(), a_.init.pp, b_.init.pp, joint, rng_);
  }

  struct Partner {
    so::UserCredential cred;
    so::RoleKey rk;
  };

  Partner PartnerUser(const std::string& id, const std::string& role) {
    auto cred = so::PrivKeyGen(ctx(), b_.init.pp, b_.init.msk, id, rng_);
    auto rk = so::RoleKeyGen(ctx(), b_.init.pp, b_.setup.secrets.at(role), b_.init.g_delta,
                             cred.us, cred.id);
    board_.PublishUserKey("B", id, cred.pub);
    return {cred, rk};
  }

  // Full partner-side decryption, in the order the clouds run it.
  GTElement Decrypt(const mo::MultiKemCiphertext& ct, const Partner& p) {
    GTElement c1 = mo::TranslateC1(ctx(), ct.c1, ct.c2, rekeys_.Get("A", "B"),
                                   a_.init.msk.eta);
    auto bk = so::TransformRoleKey(ctx(), p.rk, rng_);
    auto tdk = mo::MakeTdk(ctx(), bk.trk, board_.FindUserKey("B", p.cred.id),
                           b_.init.msk.sigma);
    auto pd = mo::MultiCloudPartialDec(ctx(), ct, tdk, b_.h);
    return mo::MultiUserFinalize(ctx(), c1, pd, bk.v, p.cred.u);
  }

  Rng rng_{77};
  Org a_, b_;
  mo::RekeyStore rekeys_;
  actors::BulletinBoard board_;
};

TEST_F(MoRbeTest, CiphertextComponentsMatchOracle) {
  auto enc = Encrypt("r5", "r6");
  const mpz_class d =
      Mod(ctx(), ctx().LedgerOf(enc.ct.c2)->value() * Inv(ctx(), a_.init.msk.eta.value()));
  const mpz_class k = ctx().LedgerOf(enc.key)->value();
  const auto& ma = a_.init.msk;
  EXPECT_TRUE(IsGtPower(ctx(), enc.ct.c1, k + (ma.y.value() - ma.delta.value()) * d));
  EXPECT_TRUE(IsG1Power(ctx(), enc.ct.c2_partner, b_.init.msk.eta.value() * d));
  EXPECT_EQ(enc.ct.c3.size(), 3u);
  EXPECT_EQ(enc.ct.c3_partner.size(), 4u);
  for (const auto& [l, c] : enc.ct.c3_partner)
    EXPECT_TRUE(IsG1Power(ctx(), c, b_.setup.params.t.at(l).value() * d)) << l;
  EXPECT_EQ(enc.ct.g1_count(), 11u);
}

TEST_F(MoRbeTest, TranslatedC1MatchesOracle) {
  auto enc = Encrypt("r5", "r6");
  const mpz_class d =
      Mod(ctx(), ctx().LedgerOf(enc.ct.c2)->value() * Inv(ctx(), a_.init.msk.eta.value()));
  const mpz_class k = ctx().LedgerOf(enc.key)->value();
  const auto& mb = b_.init.msk;
  GTElement c1 = mo::TranslateC1(ctx(), enc.ct.c1, enc.ct.c2, rekeys_.Get("A", "B"),
                                 a_.init.msk.eta);
  EXPECT_TRUE(IsGtPower(ctx(), c1,
                        k + d * (mb.y.value() - mb.delta.value()) * mb.sigma.value()));
}

TEST_F(MoRbeTest, PartnerUsersFollowPartnerHierarchy) {
  for (const auto& rj : {"r6", "r8"}) {
    auto enc = Encrypt("r5", rj);
    for (const auto& x : b_.h.roles()) {
      auto p = PartnerUser("u-" + std::string(rj) + "-" + x, x);
      if (testing::SampleAncestors().at(rj).contains(x)) {
        EXPECT_EQ(Decrypt(enc.ct, p), enc.key) << x << " on " << rj;
      } else {
        EXPECT_EQ(CodeOf([&] { Decrypt(enc.ct, p); }), ErrorCode::kUnauthorizedRole)
            << x << " on " << rj;
      }
    }
  }
}

TEST_F(MoRbeTest, OwnViewOpensWithSingleOrganizationFlow) {
  auto enc = Encrypt("r5", "r6");
  auto alice = so::PrivKeyGen(ctx(), a_.init.pp, a_.init.msk, "alice", rng_);
  auto rk = so::RoleKeyGen(ctx(), a_.init.pp, a_.setup.secrets.at("r2"), a_.init.g_delta,
                           alice.us, alice.id);
  auto bk = so::TransformRoleKey(ctx(), rk, rng_);
  auto pd = so::CloudPartialDec(ctx(), enc.ct.OwnView(), bk.trk, alice.pub, a_.h);
  EXPECT_EQ(so::UserFinalize(ctx(), enc.ct.c1, pd, bk.v, alice.u), enc.key);
}

TEST_F(MoRbeTest, SameOrganizationIsRejected) {
  EXPECT_EQ(CodeOf([&] {
              mo::RolePubKeyUpdate(a_.setup.public_keys.at("r5"),
                                   a_.setup.public_keys.at("r6"));
            }),
            ErrorCode::kSameOrganization);
  mo::JointRolePublicKey joint{a_.setup.public_keys.at("r5"), a_.setup.public_keys.at("r6")};
  EXPECT_EQ(CodeOf([&] { mo::MultiKemEncrypt(ctx(), a_.init.pp, a_.init.pp, joint, rng_); }),
            ErrorCode::kSameOrganization);
}

TEST_F(MoRbeTest, MissingRekeyIsReported) {
  EXPECT_TRUE(rekeys_.Contains("A", "B"));
  EXPECT_FALSE(rekeys_.Contains("B", "A"));
  EXPECT_EQ(CodeOf([&] { rekeys_.Get("B", "A"); }), ErrorCode::kMissingRekey);
  EXPECT_EQ(CodeOf([&] { rekeys_.Get("A", "C"); }), ErrorCode::kMissingRekey);
}

TEST_F(MoRbeTest, RekeyReplacementIsReported) {
  auto again = mo::MakeRekey(ctx(), "A", a_.init.msk, mo::LongKeyShare(ctx(), "B", b_.init.msk));
  EXPECT_TRUE(rekeys_.Put(again));
  EXPECT_EQ(rekeys_.entries().size(), 1u);
}

TEST_F(MoRbeTest, WrongRekeyDoesNotDecrypt) {
  auto c = MakeOrg("C");
  rekeys_.Put(mo::MakeRekey(ctx(), "A", a_.init.msk, mo::LongKeyShare(ctx(), "B", c.init.msk)));
  auto enc = Encrypt("r5", "r6");
  auto p = PartnerUser("bob", "r1");
  EXPECT_FALSE(Decrypt(enc.ct, p) == enc.key);
}

TEST_F(MoRbeTest, RevokedPartnerUserIsStoppedAtTdk) {
  auto enc = Encrypt("r5", "r6");
  auto p = PartnerUser("bob", "r1");
  auto q = PartnerUser("eve", "r2");
  EXPECT_EQ(Decrypt(enc.ct, p), enc.key);
  so::URevoke(board_, "B", "bob");
  auto bk = so::TransformRoleKey(ctx(), p.rk, rng_);
  CounterScope scope(ctx());
  EXPECT_EQ(CodeOf([&] {
              mo::MakeTdk(ctx(), bk.trk, board_.FindUserKey("B", "bob"), b_.init.msk.sigma);
            }),
            ErrorCode::kRevokedUser);
  EXPECT_TRUE(scope.Diff().crypto_free());
  EXPECT_EQ(Decrypt(enc.ct, q), enc.key);
}

TEST_F(MoRbeTest, HostUsersCannotUsePartnerPath) {
  auto enc = Encrypt("r5", "r6");
  auto alice = so::PrivKeyGen(ctx(), a_.init.pp, a_.init.msk, "alice", rng_);
  auto rk = so::RoleKeyGen(ctx(), a_.init.pp, a_.setup.secrets.at("r1"), a_.init.g_delta,
                           alice.us, alice.id);
  auto bk = so::TransformRoleKey(ctx(), rk, rng_);
  auto tdk = mo::MakeTdk(ctx(), bk.trk, alice.pub, b_.init.msk.sigma);
  EXPECT_EQ(CodeOf([&] { mo::MultiCloudPartialDec(ctx(), enc.ct, tdk, b_.h); }),
            ErrorCode::kUnauthorizedRole);
}

TEST_F(MoRbeTest, OperationCounts) {
  auto joint =
      mo::RolePubKeyUpdate(a_.setup.public_keys.at("r5"), b_.setup.public_keys.at("r6"));
  CounterScope enc_scope(ctx());
  auto enc = mo::MultiKemEncrypt(ctx(), a_.init.pp, b_.init.pp, joint, rng_);
  OpCounts e = enc_scope.Diff();
  EXPECT_EQ(e.exp_g1, 3u + 4u + 4u);
  EXPECT_EQ(e.exp_gt, 1u);
  EXPECT_EQ(e.pairings, 0u);

  auto p = PartnerUser("bob", "r2");
  CounterScope dec_scope(ctx());
  EXPECT_EQ(Decrypt(enc.ct, p), enc.key);
  OpCounts d = dec_scope.Diff();
  EXPECT_EQ(d.exp_g1, 4u);
  EXPECT_EQ(d.exp_gt, 2u);
  EXPECT_EQ(d.pairings, 3u);
}

}  // namespace
}  // namespace rbe
