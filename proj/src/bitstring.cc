// Copyright 2026 The PVLC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "pvlc/bitstring.h"

#include "pvlc/errors.h"

namespace pvlc {

Bitstring Bitstring::FromString(std::string_view bits) {
  Bitstring out;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw ValidationError("bitstring may only contain '0' and '1'");
    }
    out.bits_.push_back(c == '1');
  }
  return out;
}

Bitstring Bitstring::FromUint(std::uint64_t value, std::size_t width) {
  if (width > 64) throw ValidationError("bitstring width above 64");
  Bitstring out;
  for (std::size_t i = width; i > 0; --i) {
    out.bits_.push_back(((value >> (i - 1)) & 1U) != 0);
  }
  return out;
}

void Bitstring::Append(const Bitstring& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

bool Bitstring::IsPrefixOf(const Bitstring& other) const {
  if (bits_.size() > other.bits_.size()) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] != other.bits_[i]) return false;
  }
  return true;
}

std::string Bitstring::ToString() const {
  std::string out;
  out.reserve(bits_.size());
  for (bool b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

std::vector<std::uint8_t> PackBits(const Bitstring& bits) {
  std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
  }
  return out;
}

Bitstring UnpackBits(const std::vector<std::uint8_t>& bytes,
                     std::size_t bit_count) {
  if (bit_count > bytes.size() * 8) {
    throw ValidationError("packed buffer shorter than declared bit count");
  }
  Bitstring out;
  for (std::size_t i = 0; i < bit_count; ++i) {
    out.push_back((bytes[i / 8] & (0x80U >> (i % 8))) != 0);
  }
  return out;
}

}  // namespace pvlc
