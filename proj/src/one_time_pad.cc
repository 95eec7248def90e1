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
#include "pvlc/one_time_pad.h"

#include <string>

#include "pvlc/errors.h"

namespace pvlc {
namespace {

void CheckKey(const PadKey& key) {
  if (key.modulus == 0) throw ValidationError("pad modulus must be positive");
  if (key.value >= key.modulus) {
    throw ValidationError("pad key " + std::to_string(key.value) +
                          " out of range for modulus " +
                          std::to_string(key.modulus));
  }
}

}  // namespace

PaddedSecret OtpEncrypt(Symbol x, const PadKey& key) {
  CheckKey(key);
  if (x >= key.modulus) {
    throw ValidationError("symbol " + std::to_string(x) +
                          " out of range for modulus " +
                          std::to_string(key.modulus));
  }
  const auto sum = static_cast<std::uint64_t>(x) + key.value;
  return {static_cast<Symbol>(sum % key.modulus), key.modulus};
}

Symbol OtpDecrypt(const PaddedSecret& padded, const PadKey& key) {
  CheckKey(key);
  if (padded.modulus != key.modulus) {
    throw ValidationError("pad modulus mismatch: " +
                          std::to_string(padded.modulus) + " vs " +
                          std::to_string(key.modulus));
  }
  if (padded.value >= padded.modulus) {
    throw ValidationError("padded symbol out of range");
  }
  const auto sum =
      static_cast<std::uint64_t>(padded.value) + (key.modulus - key.value);
  return static_cast<Symbol>(sum % key.modulus);
}

}  // namespace pvlc
