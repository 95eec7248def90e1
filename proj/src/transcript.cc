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
#include "pvlc/transcript.h"

#include "pvlc/errors.h"

namespace pvlc {
namespace {

constexpr std::uint8_t kVersion = 1;

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xFFU));
  }
}

std::uint32_t GetU32(const std::vector<std::uint8_t>& in, std::size_t* pos) {
  if (*pos + 4 > in.size()) {
    throw ValidationError("truncated transcript header");
  }
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v = (v << 8) | in[(*pos)++];
  return v;
}

}  // namespace

std::string SlotLabel(std::size_t slot) {
  return slot == 0 ? "pad" : "C" + std::to_string(slot);
}

std::size_t Transcript::total_length() const {
  std::size_t n = 0;
  for (const auto& s : slots) n += s.bits.size();
  return n;
}

Bitstring Transcript::Flatten() const {
  Bitstring out;
  for (const auto& s : slots) out.Append(s.bits);
  return out;
}

std::string Transcript::ToDebugString() const {
  std::string out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (i > 0) out.push_back('|');
    out += slots[i].bits.ToString();
  }
  return out;
}

std::vector<std::uint8_t> PackTranscript(const Transcript& t) {
  std::vector<std::uint8_t> out{'P', 'V', 'L', 'C', kVersion};
  PutU32(out, static_cast<std::uint32_t>(t.slots.size()));
  for (const auto& s : t.slots) {
    PutU32(out, static_cast<std::uint32_t>(s.bits.size()));
  }
  const auto body = PackBits(t.Flatten());
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

Transcript UnpackTranscript(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 5 || bytes[0] != 'P' || bytes[1] != 'V' ||
      bytes[2] != 'L' || bytes[3] != 'C') {
    throw ValidationError("not a packed transcript (bad magic)");
  }
  if (bytes[4] != kVersion) {
    throw ValidationError("unsupported transcript version " +
                          std::to_string(bytes[4]));
  }
  std::size_t pos = 5;
  const std::uint32_t count = GetU32(bytes, &pos);
  std::vector<std::uint32_t> lengths;
  std::size_t total = 0;
  for (std::uint32_t i = 0; i < count; ++i) {
    lengths.push_back(GetU32(bytes, &pos));
    total += lengths.back();
  }
  const std::vector<std::uint8_t> body(bytes.begin() + pos, bytes.end());
  if (body.size() != (total + 7) / 8) {
    throw ValidationError("transcript body size does not match header");
  }
  const Bitstring all = UnpackBits(body, total);
  Transcript t;
  std::size_t offset = 0;
  for (std::uint32_t i = 0; i < count; ++i) {
    TranscriptSlot slot{SlotLabel(i), {}};
    for (std::uint32_t b = 0; b < lengths[i]; ++b) {
      slot.bits.push_back(all[offset++]);
    }
    t.slots.push_back(std::move(slot));
  }
  return t;
}

}  // namespace pvlc
