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

#include "rbe/envelope.h"

#include <openssl/core_names.h>
#include <openssl/evp.h>
#include <openssl/kdf.h>

#include <memory>

#include "rbe/algebra/wire.h"
#include "rbe/error.h"

namespace rbe::envelope {

namespace {

constexpr std::string_view kMagic = "RBEC";

using CipherCtx =
    std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)>;

CipherCtx NewCipherCtx() {
  CipherCtx ctx(EVP_CIPHER_CTX_new(), EVP_CIPHER_CTX_free);
  RBE_ENFORCE(ctx != nullptr, ErrorCode::kInvalidArgument,
              "cipher context allocation failed");
  return ctx;
}

void WriteEntries(ByteWriter& w, const PairingContext& ctx,
                  const std::map<std::string, G1Element>& entries) {
  RBE_ENFORCE(entries.size() <= UINT16_MAX, ErrorCode::kInvalidArgument,
              "too many ciphertext components");
  w.U16(static_cast<uint16_t>(entries.size()));
  for (const auto& [name, x] : entries) {
    w.Str(name);
    w.Record(ctx, x);
  }
}

std::map<std::string, G1Element> ReadEntries(ByteReader& r,
                                             const PairingContext& ctx) {
  std::map<std::string, G1Element> out;
  const uint16_t n = r.U16();
  std::string prev;
  for (uint16_t i = 0; i < n; ++i) {
    std::string name = r.Str();
    RBE_ENFORCE(i == 0 || name > prev, ErrorCode::kDecode,
                "component entries not strictly sorted");
    prev = name;
    out.emplace(std::move(name), r.G1Record(ctx));
  }
  return out;
}

void WritePreamble(ByteWriter& w, uint8_t mode) {
  w.Raw(kMagic);
  w.U8(kVersion);
  w.U8(mode);
}

}  // namespace

Dek DeriveDek(const PairingContext& ctx, const GTElement& key) {
  const Bytes ikm = ctx.Serialize(key);
  std::unique_ptr<EVP_KDF, decltype(&EVP_KDF_free)> kdf(
      EVP_KDF_fetch(nullptr, "HKDF", nullptr), EVP_KDF_free);
  RBE_ENFORCE(kdf != nullptr, ErrorCode::kUnsupported, "HKDF unavailable");
  std::unique_ptr<EVP_KDF_CTX, decltype(&EVP_KDF_CTX_free)> kctx(
      EVP_KDF_CTX_new(kdf.get()), EVP_KDF_CTX_free);
  RBE_ENFORCE(kctx != nullptr, ErrorCode::kUnsupported, "HKDF ctx failed");

  char digest[] = "SHA256";
  OSSL_PARAM params[] = {
      OSSL_PARAM_construct_utf8_string(OSSL_KDF_PARAM_DIGEST, digest, 0),
      OSSL_PARAM_construct_octet_string(
          OSSL_KDF_PARAM_KEY, const_cast<uint8_t*>(ikm.data()), ikm.size()),
      OSSL_PARAM_construct_octet_string(
          OSSL_KDF_PARAM_INFO, const_cast<char*>(kKdfContext.data()),
          kKdfContext.size()),
      OSSL_PARAM_construct_end()};
  Dek out{};
  RBE_ENFORCE(EVP_KDF_derive(kctx.get(), out.data(), out.size(), params) == 1,
              ErrorCode::kUnsupported, "HKDF derive failed");
  return out;
}

SealedPayload Seal(const PairingContext& ctx, std::span<const uint8_t> message,
                   const GTElement& key, Rng& rng,
                   std::span<const uint8_t> aad) {
  const Dek dek = DeriveDek(ctx, key);
  SealedPayload out;
  rng.Fill(out.nonce);

  CipherCtx c = NewCipherCtx();
  int len = 0;
  bool ok = EVP_EncryptInit_ex(c.get(), EVP_aes_256_gcm(), nullptr, nullptr,
                               nullptr) == 1 &&
            EVP_CIPHER_CTX_ctrl(c.get(), EVP_CTRL_GCM_SET_IVLEN, kNonceBytes,
                                nullptr) == 1 &&
            EVP_EncryptInit_ex(c.get(), nullptr, nullptr, dek.data(),
                               out.nonce.data()) == 1;
  if (ok && !aad.empty()) {
    ok = EVP_EncryptUpdate(c.get(), nullptr, &len, aad.data(),
                           static_cast<int>(aad.size())) == 1;
  }
  out.body.resize(message.size() + kTagBytes);
  int written = 0;
  if (ok && !message.empty()) {
    ok = EVP_EncryptUpdate(c.get(), out.body.data(), &len, message.data(),
                           static_cast<int>(message.size())) == 1;
    written = len;
  }
  ok = ok && EVP_EncryptFinal_ex(c.get(), out.body.data() + written, &len) == 1;
  ok = ok && EVP_CIPHER_CTX_ctrl(c.get(), EVP_CTRL_GCM_GET_TAG, kTagBytes,
                                 out.body.data() + message.size()) == 1;
  RBE_ENFORCE(ok, ErrorCode::kInvalidArgument, "AES-GCM seal failed");
  return out;
}

Bytes Open(const PairingContext& ctx, const SealedPayload& sealed,
           const GTElement& key, std::span<const uint8_t> aad) {
  RBE_ENFORCE(sealed.body.size() >= kTagBytes, ErrorCode::kAuthFailure,
              "sealed body shorter than the tag");
  const Dek dek = DeriveDek(ctx, key);
  const size_t n = sealed.body.size() - kTagBytes;
  Bytes out(n);

  CipherCtx c = NewCipherCtx();
  int len = 0;
  bool ok = EVP_DecryptInit_ex(c.get(), EVP_aes_256_gcm(), nullptr, nullptr,
                               nullptr) == 1 &&
            EVP_CIPHER_CTX_ctrl(c.get(), EVP_CTRL_GCM_SET_IVLEN, kNonceBytes,
                                nullptr) == 1 &&
            EVP_DecryptInit_ex(c.get(), nullptr, nullptr, dek.data(),
                               sealed.nonce.data()) == 1;
  if (ok && !aad.empty()) {
    ok = EVP_DecryptUpdate(c.get(), nullptr, &len, aad.data(),
                           static_cast<int>(aad.size())) == 1;
  }
  int written = 0;
  if (ok && n > 0) {
    ok = EVP_DecryptUpdate(c.get(), out.data(), &len, sealed.body.data(),
                           static_cast<int>(n)) == 1;
    written = len;
  }
  ok = ok && EVP_CIPHER_CTX_ctrl(
                 c.get(), EVP_CTRL_GCM_SET_TAG, kTagBytes,
                 const_cast<uint8_t*>(sealed.body.data() + n)) == 1;
  ok = ok && EVP_DecryptFinal_ex(c.get(), out.data() + written, &len) == 1;
  RBE_ENFORCE(ok, ErrorCode::kAuthFailure,
              "payload authentication failed (wrong key or modified data)");
  return out;
}

Bytes EncodeHeader(const PairingContext& ctx, const so::KemCiphertext& kem) {
  ByteWriter w;
  WritePreamble(w, kModeSingle);
  w.Str(kem.role.org);
  w.Str(kem.role.name);
  w.Record(ctx, kem.c1);
  w.Record(ctx, kem.c2);
  w.Record(ctx, kem.c_role);
  WriteEntries(w, ctx, kem.c3);
  return w.Take();
}

Bytes EncodeHeader(const PairingContext& ctx,
                   const mo::MultiKemCiphertext& kem) {
  ByteWriter w;
  WritePreamble(w, kModeMulti);
  w.Str(kem.role.org);
  w.Str(kem.partner_role.org);
  w.Str(kem.role.name);
  w.Str(kem.partner_role.name);
  w.Record(ctx, kem.c1);
  w.Record(ctx, kem.c2);
  w.Record(ctx, kem.c2_partner);
  w.Record(ctx, kem.c_role);
  w.Record(ctx, kem.c_role_partner);
  WriteEntries(w, ctx, kem.c3);
  WriteEntries(w, ctx, kem.c3_partner);
  return w.Take();
}

Bytes EncodeContainer(const PairingContext& ctx, const Ciphertext& ct) {
  ByteWriter w;
  const SealedPayload* payload = nullptr;
  if (const auto* s = std::get_if<SingleOrgCiphertext>(&ct)) {
    w.Raw(EncodeHeader(ctx, s->kem));
    payload = &s->payload;
  } else {
    const auto& m = std::get<MultiOrgCiphertext>(ct);
    w.Raw(EncodeHeader(ctx, m.kem));
    payload = &m.payload;
  }
  w.Raw(payload->nonce);
  w.Blob(payload->body);
  return w.Take();
}

Ciphertext DecodeContainer(const PairingContext& ctx,
                           std::span<const uint8_t> in) {
  ByteReader r(in);
  auto magic = r.Raw(kMagic.size());
  RBE_ENFORCE(std::equal(magic.begin(), magic.end(), kMagic.begin()),
              ErrorCode::kDecode, "not an RBEC container");
  const uint8_t version = r.U8();
  RBE_ENFORCE(version == kVersion, ErrorCode::kDecode,
              "unsupported container version " + std::to_string(version));
  const uint8_t mode = r.U8();

  auto read_payload = [&r]() {
    SealedPayload p;
    auto nonce = r.Raw(kNonceBytes);
    std::copy(nonce.begin(), nonce.end(), p.nonce.begin());
    p.body = r.Blob();
    RBE_ENFORCE(r.done(), ErrorCode::kDecode, "trailing bytes in container");
    return p;
  };

  if (mode == kModeSingle) {
    SingleOrgCiphertext out;
    out.kem.role.org = r.Str();
    out.kem.role.name = r.Str();
    out.kem.c1 = r.GtRecord(ctx);
    out.kem.c2 = r.G1Record(ctx);
    out.kem.c_role = r.G1Record(ctx);
    out.kem.c3 = ReadEntries(r, ctx);
    out.payload = read_payload();
    return out;
  }
  RBE_ENFORCE(mode == kModeMulti, ErrorCode::kDecode,
              "unknown container mode " + std::to_string(mode));
  MultiOrgCiphertext out;
  out.kem.role.org = r.Str();
  out.kem.partner_role.org = r.Str();
  out.kem.role.name = r.Str();
  out.kem.partner_role.name = r.Str();
  out.kem.c1 = r.GtRecord(ctx);
  out.kem.c2 = r.G1Record(ctx);
  out.kem.c2_partner = r.G1Record(ctx);
  out.kem.c_role = r.G1Record(ctx);
  out.kem.c_role_partner = r.G1Record(ctx);
  out.kem.c3 = ReadEntries(r, ctx);
  out.kem.c3_partner = ReadEntries(r, ctx);
  out.payload = read_payload();
  return out;
}

SingleOrgCiphertext EncryptSingle(const PairingContext& ctx,
                                  const so::PublicParams& pp,
                                  const so::RolePublicKey& rpk,
                                  std::span<const uint8_t> message, Rng& rng) {
  so::Encapsulation enc = so::KemEncrypt(ctx, pp, rpk, rng);
  SingleOrgCiphertext out;
  out.kem = std::move(enc.ct);
  out.payload = Seal(ctx, message, enc.key, rng, EncodeHeader(ctx, out.kem));
  return out;
}

MultiOrgCiphertext EncryptMulti(const PairingContext& ctx,
                                const so::PublicParams& pp,
                                const so::PublicParams& partner_pp,
                                const mo::JointRolePublicKey& joint,
                                std::span<const uint8_t> message, Rng& rng) {
  mo::MultiEncapsulation enc =
      mo::MultiKemEncrypt(ctx, pp, partner_pp, joint, rng);
  MultiOrgCiphertext out;
  out.kem = std::move(enc.ct);
  out.payload = Seal(ctx, message, enc.key, rng, EncodeHeader(ctx, out.kem));
  return out;
}

Bytes OpenSingle(const PairingContext& ctx, const SingleOrgCiphertext& ct,
                 const GTElement& key) {
  return Open(ctx, ct.payload, key, EncodeHeader(ctx, ct.kem));
}

Bytes OpenMulti(const PairingContext& ctx, const MultiOrgCiphertext& ct,
                const GTElement& key) {
  return Open(ctx, ct.payload, key, EncodeHeader(ctx, ct.kem));
}

}  // namespace rbe::envelope
