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

#include "rbe/mo_rbe.h"

#include "rbe/error.h"
#include "rbe/kernels/batch.h"

namespace rbe::mo {

JointRolePublicKey RolePubKeyUpdate(const so::RolePublicKey& own,
                                    const so::RolePublicKey& partner) {
  RBE_ENFORCE(own.role.org != partner.role.org, ErrorCode::kSameOrganization,
              "joint keys span two organizations; use the single-organization "
              "scheme for " + own.role.org);
  return JointRolePublicKey{own, partner};
}

so::KemCiphertext MultiKemCiphertext::OwnView() const {
  return so::KemCiphertext{role, c1, c2, c_role, c3};
}

namespace {

std::map<std::string, G1Element> PowerEach(
    const PairingContext& ctx, const std::map<std::string, G1Element>& ar,
    const Scalar& d) {
  std::vector<G1Element> bases;
  bases.reserve(ar.size());
  for (const auto& [l, x] : ar) bases.push_back(x);
  std::vector<G1Element> powered = kernels::ExpEach(ctx, bases, d);
  std::map<std::string, G1Element> out;
  size_t i = 0;
  for (const auto& [l, x] : ar) out.emplace(l, std::move(powered[i++]));
  return out;
}

}  // namespace

MultiEncapsulation MultiKemEncrypt(const PairingContext& ctx,
                                   const so::PublicParams& pp,
                                   const so::PublicParams& partner_pp,
                                   const JointRolePublicKey& joint, Rng& rng) {
  RBE_ENFORCE(joint.encryptor.role.org == pp.org &&
                  joint.partner.role.org == partner_pp.org,
              ErrorCode::kInvalidArgument,
              "joint key does not match the supplied public parameters");
  RBE_ENFORCE(pp.org != partner_pp.org, ErrorCode::kSameOrganization,
              "partner organization equals the encrypting organization");
  const Scalar d = ctx.RandomNonzeroScalar(rng);
  MultiEncapsulation out;
  out.key = ctx.RandomGt(rng);

  MultiKemCiphertext& ct = out.ct;
  ct.role = joint.encryptor.role;
  ct.partner_role = joint.partner.role;
  ct.c1 = ctx.Mul(out.key, ctx.Exp(ctx.Div(pp.Y, pp.V), d));
  ct.c2 = ctx.Exp(pp.h, d);
  ct.c2_partner = ctx.Exp(partner_pp.h, d);
  ct.c_role = ctx.Exp(joint.encryptor.pk, d);
  ct.c_role_partner = ctx.Exp(joint.partner.pk, d);
  ct.c3 = PowerEach(ctx, joint.encryptor.ar, d);
  ct.c3_partner = PowerEach(ctx, joint.partner.ar, d);
  return out;
}

LongTermSecret LongKeyShare(const PairingContext& ctx, std::string issuer,
                            const so::MasterSecret& msk) {
  return LongTermSecret{std::move(issuer),
                        ctx.Exp(ctx.g(), (msk.y - msk.delta) * msk.sigma)};
}

ReKey MakeRekey(const PairingContext& ctx, std::string host,
                const so::MasterSecret& host_msk, const LongTermSecret& lts) {
  const G1Element own = ctx.Exp(ctx.g(), host_msk.y - host_msk.delta);
  return ReKey{std::move(host), lts.issuer, ctx.Div(lts.lts, own)};
}

bool RekeyStore::Put(ReKey key) {
  auto k = std::make_pair(key.host, key.partner);
  const bool replaced = keys_.contains(k);
  keys_.insert_or_assign(std::move(k), std::move(key));
  return replaced;
}

const ReKey& RekeyStore::Get(std::string_view host,
                             std::string_view partner) const {
  auto it = keys_.find({std::string(host), std::string(partner)});
  RBE_ENFORCE(it != keys_.end(), ErrorCode::kMissingRekey,
              "no re-encryption key from " + std::string(host) + " to " +
                  std::string(partner));
  return it->second;
}

bool RekeyStore::Contains(std::string_view host,
                          std::string_view partner) const {
  return keys_.contains({std::string(host), std::string(partner)});
}

GTElement TranslateC1(const PairingContext& ctx, const GTElement& c1,
                      const G1Element& c2, const ReKey& rekey,
                      const Scalar& eta_host) {
  const G1Element g_d = ctx.Exp(c2, eta_host.Inverse());
  return ctx.Mul(c1, ctx.Pair(rekey.key, g_d));
}

TemporaryDecryptionKey MakeTdk(const PairingContext& ctx,
                               const so::TransformedRoleKey& trk,
                               const std::optional<G1Element>& pub,
                               const Scalar& sigma_partner) {
  RBE_ENFORCE(pub.has_value(), ErrorCode::kRevokedUser,
              "no public key on the bulletin board for " + trk.user);
  return TemporaryDecryptionKey{trk.role, trk.user,
                                ctx.Exp(trk.trk, sigma_partner),
                                ctx.Exp(*pub, sigma_partner)};
}

so::PartialDecryption MultiCloudPartialDec(const PairingContext& ctx,
                                           const MultiKemCiphertext& ct,
                                           const TemporaryDecryptionKey& tdk,
                                           const RoleHierarchy& partner_h,
                                           so::RoleGate gate) {
  RBE_ENFORCE(tdk.role.org == ct.partner_org() &&
                  partner_h.org() == ct.partner_org(),
              ErrorCode::kUnauthorizedRole,
              "role " + tdk.role.ToString() +
                  " is not on the partner side of this ciphertext (" +
                  ct.partner_role.ToString() + ")");
  RBE_ENFORCE(partner_h.Contains(tdk.role.name) &&
                  partner_h.Contains(ct.partner_role.name),
              ErrorCode::kUnknownRole,
              "role not in hierarchy of " + partner_h.org());
  if (gate == so::RoleGate::kEnforce) {
    RBE_ENFORCE(partner_h.IsAncestor(tdk.role.name, ct.partner_role.name),
                ErrorCode::kUnauthorizedRole,
                tdk.role.ToString() + " is not an ancestor of " +
                    ct.partner_role.ToString());
  }
  const G1Element base =
      so::RetargetBase(ctx, ct.c_role_partner, ct.c3_partner, partner_h,
                       tdk.role.name, ct.partner_role.name);
  const kernels::PairInput inputs[] = {{base, tdk.tdk},
                                       {ct.c2_partner, tdk.blind_pub}};
  std::vector<GTElement> pq = kernels::PairEach(ctx, inputs);
  return so::PartialDecryption{std::move(pq[0]), std::move(pq[1])};
}

GTElement MultiUserFinalize(const PairingContext& ctx,
                            const GTElement& c1_translated,
                            const so::PartialDecryption& pd, const Scalar& v,
                            const Scalar& u) {
  return so::UserFinalize(ctx, c1_translated, pd, v, u);
}

}  // namespace rbe::mo
