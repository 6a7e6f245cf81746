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

#include "rbe/algebra/wire.h"

#include "rbe/error.h"

namespace rbe {

void ByteWriter::U16(uint16_t v) {
  out_.push_back(static_cast<uint8_t>(v >> 8));
  out_.push_back(static_cast<uint8_t>(v));
}

void ByteWriter::U32(uint32_t v) {
  for (int i = 3; i >= 0; --i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void ByteWriter::Str(std::string_view s) {
  RBE_ENFORCE(s.size() <= UINT16_MAX, ErrorCode::kInvalidArgument,
              "string too long for u16 length prefix");
  U16(static_cast<uint16_t>(s.size()));
  Raw(s);
}

void ByteWriter::Blob(std::span<const uint8_t> b) {
  RBE_ENFORCE(b.size() <= UINT32_MAX, ErrorCode::kInvalidArgument,
              "blob too long");
  U32(static_cast<uint32_t>(b.size()));
  Raw(b);
}

namespace {

void WriteRecord(ByteWriter& w, RecordTag tag, const Bytes& body) {
  w.U8(static_cast<uint8_t>(tag));
  w.U16(static_cast<uint16_t>(body.size()));
  w.Raw(body);
}

}  // namespace

void ByteWriter::Record(const PairingContext& ctx, const G1Element& x) {
  WriteRecord(*this, RecordTag::kG1, ctx.Serialize(x));
}

void ByteWriter::Record(const PairingContext& ctx, const GTElement& x) {
  WriteRecord(*this, RecordTag::kGt, ctx.Serialize(x));
}

void ByteWriter::Record(const PairingContext& ctx, const Scalar& x) {
  WriteRecord(*this, RecordTag::kScalar, ctx.Serialize(x));
}

std::span<const uint8_t> ByteReader::Raw(size_t n) {
  RBE_ENFORCE(n <= remaining(), ErrorCode::kDecode, "truncated input");
  auto out = in_.subspan(pos_, n);
  pos_ += n;
  return out;
}

uint8_t ByteReader::U8() { return Raw(1)[0]; }

uint16_t ByteReader::U16() {
  auto b = Raw(2);
  return static_cast<uint16_t>((b[0] << 8) | b[1]);
}

uint32_t ByteReader::U32() {
  auto b = Raw(4);
  return (uint32_t{b[0]} << 24) | (uint32_t{b[1]} << 16) |
         (uint32_t{b[2]} << 8) | uint32_t{b[3]};
}

std::string ByteReader::Str() {
  auto b = Raw(U16());
  return std::string(b.begin(), b.end());
}

Bytes ByteReader::Blob() {
  auto b = Raw(U32());
  return Bytes(b.begin(), b.end());
}

RecordTag ByteReader::PeekTag() const {
  RBE_ENFORCE(remaining() >= 1, ErrorCode::kDecode, "truncated input");
  return static_cast<RecordTag>(in_[pos_]);
}

std::span<const uint8_t> ByteReader::RecordBody(RecordTag expected) {
  const uint8_t tag = U8();
  RBE_ENFORCE(tag == static_cast<uint8_t>(expected), ErrorCode::kDecode,
              "unexpected record tag " + std::to_string(tag));
  return Raw(U16());
}

G1Element ByteReader::G1Record(const PairingContext& ctx) {
  return ctx.DeserializeG1(RecordBody(RecordTag::kG1));
}

GTElement ByteReader::GtRecord(const PairingContext& ctx) {
  return ctx.DeserializeGt(RecordBody(RecordTag::kGt));
}

Scalar ByteReader::ScalarRecord(const PairingContext& ctx) {
  return ctx.DeserializeScalar(RecordBody(RecordTag::kScalar));
}

}  // namespace rbe
