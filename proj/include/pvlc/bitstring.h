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

#ifndef PVLC_BITSTRING_H_
#define PVLC_BITSTRING_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pvlc {

class Bitstring {
 public:
  Bitstring() = default;

  // Accepts only '0' and '1'. Throws ValidationError otherwise.
  static Bitstring FromString(std::string_view bits);
  // The low `width` bits of `value`, most significant first.
  static Bitstring FromUint(std::uint64_t value, std::size_t width);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i]; }

  void push_back(bool bit) { bits_.push_back(bit); }
  void Append(const Bitstring& other);

  bool IsPrefixOf(const Bitstring& other) const;
  std::string ToString() const;

  friend bool operator==(const Bitstring&, const Bitstring&) = default;
  friend auto operator<=>(const Bitstring& a, const Bitstring& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  std::vector<bool> bits_;
};

// Big-endian within each byte; the final partial byte is zero-padded.
std::vector<std::uint8_t> PackBits(const Bitstring& bits);
Bitstring UnpackBits(const std::vector<std::uint8_t>& bytes,
                     std::size_t bit_count);

}  // namespace pvlc

#endif  // PVLC_BITSTRING_H_
