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

#ifndef PVLC_TRANSCRIPT_H_
#define PVLC_TRANSCRIPT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "pvlc/bitstring.h"

namespace pvlc {

struct TranscriptSlot {
  std::string label;
  Bitstring bits;

  friend bool operator==(const TranscriptSlot&, const TranscriptSlot&) =
      default;
};

// Delivered message: the pad slot followed by one slot per demand.
struct Transcript {
  std::vector<TranscriptSlot> slots;

  std::size_t total_length() const;
  Bitstring Flatten() const;
  // Slots as '0'/'1' runs joined by '|'; empty slots render as "".
  std::string ToDebugString() const;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

// Packed file layout, all integers big-endian:
//   "PVLC"  magic
//   u8      version (1)
//   u32     slot count S
//   u32 x S slot lengths in bits
//   bytes   all slots concatenated, big-endian bit order within bytes,
//           final partial byte zero-padded
// Slot labels are not stored; unpacking names them "pad", "C1", "C2", ...
std::vector<std::uint8_t> PackTranscript(const Transcript& t);
Transcript UnpackTranscript(const std::vector<std::uint8_t>& bytes);

std::string SlotLabel(std::size_t slot);

}  // namespace pvlc

#endif  // PVLC_TRANSCRIPT_H_
