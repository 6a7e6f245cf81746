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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "rbe/algebra/pairing.h"

namespace rbe {

// Element record tags: tag byte || u16 big-endian length || canonical bytes.
enum class RecordTag : uint8_t {
  kG1 = 0x01,
  kGt = 0x02,
  kScalar = 0x03,
};

class ByteWriter {
 public:
  void U8(uint8_t v) { out_.push_back(v); }
  void U16(uint16_t v);
  void U32(uint32_t v);
  void Raw(std::span<const uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void Raw(std::string_view s) { Raw(AsBytes(s)); }
  // u16 length prefix.
  void Str(std::string_view s);
  void Blob(std::span<const uint8_t> b);  // u32 length prefix

  void Record(const PairingContext& ctx, const G1Element& x);
  void Record(const PairingContext& ctx, const GTElement& x);
  void Record(const PairingContext& ctx, const Scalar& x);

  const Bytes& bytes() const { return out_; }
  Bytes Take() { return std::move(out_); }

 private:
  Bytes out_;
};

// Bounds-checked reader; every failure throws Error(kDecode).
class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> in) : in_(in) {}

  uint8_t U8();
  uint16_t U16();
  uint32_t U32();
  std::span<const uint8_t> Raw(size_t n);
  std::string Str();
  Bytes Blob();

  G1Element G1Record(const PairingContext& ctx);
  GTElement GtRecord(const PairingContext& ctx);
  Scalar ScalarRecord(const PairingContext& ctx);
  // Peeks the next record's tag without consuming it.
  RecordTag PeekTag() const;

  size_t remaining() const { return in_.size() - pos_; }
  bool done() const { return pos_ == in_.size(); }

 private:
  std::span<const uint8_t> RecordBody(RecordTag expected);

  std::span<const uint8_t> in_;
  size_t pos_ = 0;
};

}  // namespace rbe
