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

#include "rbe/keyfile.h"

#include <fstream>
#include <iterator>

#include "rbe/error.h"

namespace rbe::keyfile {

namespace {

constexpr std::string_view kMagic = "RBE1";

ByteWriter Start(RecordType type, const std::string& org,
                 const std::string& subject) {
  ByteWriter w;
  w.Raw(kMagic);
  w.U8(static_cast<uint8_t>(type));
  w.Str(org);
  w.Str(subject);
  return w;
}

Header ReadHeader(ByteReader& r) {
  auto magic = r.Raw(kMagic.size());
  RBE_ENFORCE(std::equal(magic.begin(), magic.end(), kMagic.begin()),
              ErrorCode::kDecode, "not an RBE1 key file");
  Header h;
  h.type = static_cast<RecordType>(r.U8());
  h.org = r.Str();
  h.subject = r.Str();
  return h;
}

Header Expect(ByteReader& r, RecordType type) {
  Header h = ReadHeader(r);
  RBE_ENFORCE(h.type == type, ErrorCode::kDecode,
              "unexpected key file type " +
                  std::to_string(static_cast<int>(h.type)));
  return h;
}

void Finish(const ByteReader& r) {
  RBE_ENFORCE(r.done(), ErrorCode::kDecode, "trailing bytes in key file");
}

std::pair<std::string, std::string> SplitSubject(const std::string& s) {
  auto slash = s.find('/');
  RBE_ENFORCE(slash != std::string::npos, ErrorCode::kDecode,
              "malformed role-key subject " + s);
  return {s.substr(0, slash), s.substr(slash + 1)};
}

}  // namespace

Header PeekHeader(std::span<const uint8_t> in) {
  ByteReader r(in);
  return ReadHeader(r);
}

Bytes EncodePublicParams(const PairingContext& ctx, const so::PublicParams& pp) {
  ByteWriter w = Start(RecordType::kPublicParams, pp.org, "");
  w.Record(ctx, pp.Y);
  w.Record(ctx, pp.V);
  w.Record(ctx, pp.h);
  return w.Take();
}

so::PublicParams DecodePublicParams(const PairingContext& ctx,
                                    std::span<const uint8_t> in) {
  ByteReader r(in);
  Header h = Expect(r, RecordType::kPublicParams);
  so::PublicParams pp;
  pp.org = h.org;
  pp.Y = r.GtRecord(ctx);
  pp.V = r.GtRecord(ctx);
  pp.h = r.G1Record(ctx);
  Finish(r);
  return pp;
}

Bytes EncodeMasterSecret(const PairingContext& ctx, const std::string& org,
                         const so::MasterSecret& msk,
                         const so::RoleParams& params) {
  ByteWriter w = Start(RecordType::kMasterSecret, org, "");
  w.Record(ctx, msk.y);
  w.Record(ctx, msk.delta);
  w.Record(ctx, msk.sigma);
  w.Record(ctx, msk.eta);
  w.U16(static_cast<uint16_t>(params.t.size()));
  for (const auto& [role, t] : params.t) {
    w.Str(role);
    w.Record(ctx, t);
  }
  return w.Take();
}

std::pair<so::MasterSecret, so::RoleParams> DecodeMasterSecret(
    const PairingContext& ctx, std::span<const uint8_t> in) {
  ByteReader r(in);
  Expect(r, RecordType::kMasterSecret);
  so::MasterSecret msk;
  msk.y = r.ScalarRecord(ctx);
  msk.delta = r.ScalarRecord(ctx);
  msk.sigma = r.ScalarRecord(ctx);
  msk.eta = r.ScalarRecord(ctx);
  so::RoleParams params;
  const uint16_t n = r.U16();
  for (uint16_t i = 0; i < n; ++i) {
    std::string role = r.Str();
    params.t.emplace(std::move(role), r.ScalarRecord(ctx));
  }
  Finish(r);
  return {msk, params};
}

Bytes EncodeRolePublicKey(const PairingContext& ctx,
                          const so::RolePublicKey& rpk) {
  ByteWriter w = Start(RecordType::kRolePublicKey, rpk.role.org, rpk.role.name);
  w.Record(ctx, rpk.pk);
  w.U16(static_cast<uint16_t>(rpk.ar.size()));
  for (const auto& [role, x] : rpk.ar) {
    w.Str(role);
    w.Record(ctx, x);
  }
  return w.Take();
}

so::RolePublicKey DecodeRolePublicKey(const PairingContext& ctx,
                                      std::span<const uint8_t> in) {
  ByteReader r(in);
  Header h = Expect(r, RecordType::kRolePublicKey);
  so::RolePublicKey rpk;
  rpk.role = RoleId{h.org, h.subject};
  rpk.pk = r.G1Record(ctx);
  const uint16_t n = r.U16();
  for (uint16_t i = 0; i < n; ++i) {
    std::string role = r.Str();
    rpk.ar.emplace(std::move(role), r.G1Record(ctx));
  }
  Finish(r);
  return rpk;
}

Bytes EncodeRoleSecret(const PairingContext& ctx, const so::RoleSecret& rs) {
  ByteWriter w = Start(RecordType::kRoleSecret, rs.role.org, rs.role.name);
  w.Record(ctx, rs.rs);
  return w.Take();
}

so::RoleSecret DecodeRoleSecret(const PairingContext& ctx,
                                std::span<const uint8_t> in) {
  ByteReader r(in);
  Header h = Expect(r, RecordType::kRoleSecret);
  so::RoleSecret rs{RoleId{h.org, h.subject}, r.ScalarRecord(ctx)};
  Finish(r);
  return rs;
}

Bytes EncodeUserPrivateKey(const PairingContext& ctx, const std::string& org,
                           const std::string& id, const Scalar& u) {
  ByteWriter w = Start(RecordType::kUserPrivateKey, org, id);
  w.Record(ctx, u);
  return w.Take();
}

Scalar DecodeUserPrivateKey(const PairingContext& ctx,
                            std::span<const uint8_t> in) {
  ByteReader r(in);
  Expect(r, RecordType::kUserPrivateKey);
  Scalar u = r.ScalarRecord(ctx);
  Finish(r);
  return u;
}

Bytes EncodeG1(const PairingContext& ctx, RecordType type,
               const std::string& org, const std::string& subject,
               const G1Element& x) {
  ByteWriter w = Start(type, org, subject);
  w.Record(ctx, x);
  return w.Take();
}

G1Element DecodeG1(const PairingContext& ctx, RecordType type,
                   std::span<const uint8_t> in) {
  ByteReader r(in);
  Expect(r, type);
  G1Element x = r.G1Record(ctx);
  Finish(r);
  return x;
}

Bytes EncodeRoleKey(const PairingContext& ctx, const so::RoleKey& rk) {
  ByteWriter w =
      Start(RecordType::kRoleKey, rk.role.org, rk.user + "/" + rk.role.name);
  w.Record(ctx, rk.rk);
  return w.Take();
}

so::RoleKey DecodeRoleKey(const PairingContext& ctx,
                          std::span<const uint8_t> in) {
  ByteReader r(in);
  Header h = Expect(r, RecordType::kRoleKey);
  auto [user, role] = SplitSubject(h.subject);
  so::RoleKey rk{RoleId{h.org, role}, user, r.G1Record(ctx)};
  Finish(r);
  return rk;
}

Bytes EncodeReKey(const PairingContext& ctx, const mo::ReKey& rk) {
  ByteWriter w = Start(RecordType::kReKey, rk.host, rk.partner);
  w.Record(ctx, rk.key);
  return w.Take();
}

mo::ReKey DecodeReKey(const PairingContext& ctx, std::span<const uint8_t> in) {
  ByteReader r(in);
  Header h = Expect(r, RecordType::kReKey);
  mo::ReKey rk{h.org, h.subject, r.G1Record(ctx)};
  Finish(r);
  return rk;
}

Bytes EncodeLongTermSecret(const PairingContext& ctx,
                           const mo::LongTermSecret& lts) {
  ByteWriter w = Start(RecordType::kLongTermSecret, lts.issuer, "");
  w.Record(ctx, lts.lts);
  return w.Take();
}

mo::LongTermSecret DecodeLongTermSecret(const PairingContext& ctx,
                                        std::span<const uint8_t> in) {
  ByteReader r(in);
  Header h = Expect(r, RecordType::kLongTermSecret);
  mo::LongTermSecret lts{h.org, r.G1Record(ctx)};
  Finish(r);
  return lts;
}

RecordCensus Census(std::span<const uint8_t> in) {
  ByteReader r(in);
  Header h = ReadHeader(r);
  RecordCensus out;
  // Scan: element records are self-delimiting; string-prefixed entry names
  // precede records in map-valued types.
  auto take_record = [&]() {
    switch (r.PeekTag()) {
      case RecordTag::kG1: ++out.g1; break;
      case RecordTag::kGt: ++out.gt; break;
      case RecordTag::kScalar: ++out.scalars; break;
      default:
        throw Error(ErrorCode::kDecode, "unknown record tag");
    }
    r.U8();
    r.Raw(r.U16());
  };
  switch (h.type) {
    case RecordType::kMasterSecret: {
      for (int i = 0; i < 4; ++i) take_record();
      const uint16_t n = r.U16();
      for (uint16_t i = 0; i < n; ++i) {
        r.Str();
        take_record();
      }
      break;
    }
    case RecordType::kRolePublicKey: {
      take_record();
      const uint16_t n = r.U16();
      for (uint16_t i = 0; i < n; ++i) {
        r.Str();
        take_record();
      }
      break;
    }
    default:
      while (!r.done()) take_record();
  }
  Finish(r);
  return out;
}

Bytes ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  RBE_ENFORCE(in.good(), ErrorCode::kIo, "cannot read " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in),
               std::istreambuf_iterator<char>());
}

void WriteFile(const std::filesystem::path& path,
               std::span<const uint8_t> data) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  RBE_ENFORCE(out.good(), ErrorCode::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  RBE_ENFORCE(out.good(), ErrorCode::kIo, "short write to " + path.string());
}

}  // namespace rbe::keyfile
