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

#ifndef PVLC_ONE_TIME_PAD_H_
#define PVLC_ONE_TIME_PAD_H_

#include <cstdint>

#include "pvlc/joint_dist.h"

namespace pvlc {

// Shared key value in [0, modulus). Sessions draw it uniformly and
// independently of everything else.
struct PadKey {
  Symbol value = 0;
  std::uint32_t modulus = 1;
};

struct PaddedSecret {
  Symbol value = 0;
  std::uint32_t modulus = 1;
};

// (x + key) mod modulus. Throws ValidationError for out-of-range inputs.
PaddedSecret OtpEncrypt(Symbol x, const PadKey& key);

// Adds modulus - key. Throws ValidationError on modulus mismatch.
Symbol OtpDecrypt(const PaddedSecret& padded, const PadKey& key);

}  // namespace pvlc

#endif  // PVLC_ONE_TIME_PAD_H_
