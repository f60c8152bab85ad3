/*
 * Copyright (c) 2026, The aba authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
*/

// Tagged binary records. Every payload starts with
//   version:u8 protocol:u8 instance:u64 round:u32 type:u8
// followed by a type-specific body. Integers are little endian.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace aba::wire {

inline constexpr std::uint8_t kVersion = 1;

enum class ProtocolId : std::uint8_t {
  kRbc = 1,
  kBinaryBa = 2,
  kDolevStrong = 3,
  kStrawman = 4,
};

struct Header {
  ProtocolId protocol = ProtocolId::kRbc;
  std::uint64_t instance = 0;
  std::uint32_t round = 0;
  std::uint8_t type = 0;
};

class Writer {
 public:
  explicit Writer(const Header &h) {
    u8(kVersion);
    u8(static_cast<std::uint8_t>(h.protocol));
    u64(h.instance);
    u32(h.round);
    u8(h.type);
  }

  Writer &u8(std::uint8_t v) {
    out_.push_back(static_cast<char>(v));
    return *this;
  }
  Writer &u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
    return *this;
  }
  Writer &u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
    return *this;
  }
  Writer &str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.append(s);
    return *this;
  }

  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

// Reads never throw; a short or malformed payload flips ok() to false and
// makes every later read return zero.
class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  std::optional<Header> header() {
    if (u8() != kVersion) return std::nullopt;
    Header h;
    h.protocol = static_cast<ProtocolId>(u8());
    h.instance = u64();
    h.round = u32();
    h.type = u8();
    if (!ok_) return std::nullopt;
    return h;
  }

  std::uint8_t u8() {
    if (pos_ >= data_.size()) {
      ok_ = false;
      return 0;
    }
    return static_cast<std::uint8_t>(data_[pos_++]);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return ok_ ? v : 0;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return ok_ ? v : 0;
  }
  std::string str() {
    std::uint32_t len = u32();
    if (!ok_ || len > data_.size() - pos_) {
      ok_ = false;
      return {};
    }
    std::string s(data_.substr(pos_, len));
    pos_ += len;
    return s;
  }

  bool ok() const { return ok_; }
  bool done() const { return pos_ == data_.size(); }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
  bool ok_ = true;
};

}  // namespace aba::wire
