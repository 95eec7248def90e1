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
#include "pvlc/codebook.h"

#include <algorithm>
#include <queue>
#include <tuple>

#include "pvlc/errors.h"

namespace pvlc {
namespace {

// Increments a big-endian bit vector in place; overflow is a logic error.
void Increment(std::vector<bool>& code) {
  for (std::size_t i = code.size(); i > 0; --i) {
    if (!code[i - 1]) {
      code[i - 1] = true;
      return;
    }
    code[i - 1] = false;
  }
  throw InvariantViolation("canonical code overflow");
}

std::vector<std::size_t> HuffmanLengths(const std::vector<Rational>& dist) {
  struct Node {
    Rational weight;
    Symbol lowest;
    std::vector<Symbol> members;
  };
  auto after = [](const Node& a, const Node& b) {
    return std::tie(a.weight, a.lowest) > std::tie(b.weight, b.lowest);
  };
  std::priority_queue<Node, std::vector<Node>, decltype(after)> heap(after);
  for (std::size_t s = 0; s < dist.size(); ++s) {
    if (dist[s] > 0) {
      heap.push({dist[s], static_cast<Symbol>(s), {static_cast<Symbol>(s)}});
    }
  }
  std::vector<std::size_t> lengths(dist.size(), 0);
  while (heap.size() > 1) {
    Node a = heap.top();
    heap.pop();
    Node b = heap.top();
    heap.pop();
    for (auto s : a.members) ++lengths[s];
    for (auto s : b.members) ++lengths[s];
    a.members.insert(a.members.end(), b.members.begin(), b.members.end());
    heap.push({a.weight + b.weight, std::min(a.lowest, b.lowest),
               std::move(a.members)});
  }
  return lengths;
}

}  // namespace

std::string_view CodingModeName(CodingMode mode) {
  return mode == CodingMode::kFixedLength ? "fixed" : "entropy";
}

CodingMode ParseCodingMode(std::string_view name) {
  if (name == "fixed") return CodingMode::kFixedLength;
  if (name == "entropy") return CodingMode::kEntropy;
  throw ValidationError("coding mode must be 'fixed' or 'entropy'");
}

Codebook::Codebook(CodingMode mode,
                   std::vector<std::optional<Bitstring>> words)
    : mode_(mode), words_(std::move(words)) {
  std::vector<Bitstring> present;
  for (std::size_t s = 0; s < words_.size(); ++s) {
    if (!words_[s]) continue;
    present.push_back(*words_[s]);
    lookup_.emplace(*words_[s], static_cast<Symbol>(s));
    max_length_ = std::max(max_length_, words_[s]->size());
  }
  if (!VerifyPrefixFree(present)) {
    throw ValidationError("codebook is not prefix-free");
  }
}

const Bitstring& Codebook::Encode(Symbol s) const {
  if (s >= words_.size() || !words_[s]) {
    throw ValidationError("symbol " + std::to_string(s) +
                          " has no codeword");
  }
  return *words_[s];
}

Symbol Codebook::DecodeNext(const Bitstring& bits, std::size_t* pos) const {
  Bitstring word;
  for (std::size_t i = *pos;; ++i) {
    if (const auto it = lookup_.find(word); it != lookup_.end()) {
      *pos = i;
      return it->second;
    }
    if (i >= bits.size() || word.size() >= max_length_) break;
    word.push_back(bits[i]);
  }
  throw ValidationError("undecodable bit sequence at offset " +
                        std::to_string(*pos));
}

Symbol Codebook::DecodeExact(const Bitstring& slot) const {
  std::size_t pos = 0;
  const Symbol s = DecodeNext(slot, &pos);
  if (pos != slot.size()) {
    throw ValidationError("trailing bits after codeword");
  }
  return s;
}

Rational Codebook::KraftSum() const {
  Rational sum = 0;
  for (const auto& w : words_) {
    if (w) sum += Rational(1) / Rational(BigInt(1) << w->size());
  }
  return sum;
}

Rational Codebook::ExpectedLength(const std::vector<Rational>& dist) const {
  if (dist.size() != words_.size()) {
    throw ValidationError("distribution does not match codebook alphabet");
  }
  Rational sum = 0;
  for (std::size_t s = 0; s < dist.size(); ++s) {
    if (dist[s] == 0) continue;
    sum += dist[s] * static_cast<std::int64_t>(Encode(s).size());
  }
  return sum;
}

Codebook FixedLengthCodebook(std::size_t alphabet_size) {
  if (alphabet_size < 1) throw ValidationError("empty alphabet");
  const std::size_t width = CeilLog2(std::uint64_t{alphabet_size});
  std::vector<std::optional<Bitstring>> words;
  for (std::size_t s = 0; s < alphabet_size; ++s) {
    words.emplace_back(Bitstring::FromUint(s, width));
  }
  return Codebook(CodingMode::kFixedLength, std::move(words));
}

Codebook EntropyCodebook(const std::vector<Rational>& dist) {
  if (dist.empty()) throw ValidationError("empty alphabet");
  Rational total = 0;
  for (const auto& p : dist) {
    if (p < 0) throw ValidationError("negative probability in code design");
    total += p;
  }
  if (total != 1) throw ValidationError("code design distribution must sum to 1");
  const auto lengths = HuffmanLengths(dist);
  std::vector<Symbol> order;
  for (std::size_t s = 0; s < dist.size(); ++s) {
    if (dist[s] > 0) order.push_back(static_cast<Symbol>(s));
  }
  std::stable_sort(order.begin(), order.end(), [&](Symbol a, Symbol b) {
    return lengths[a] < lengths[b];
  });
  std::vector<std::optional<Bitstring>> words(dist.size());
  std::vector<bool> code;
  bool first = true;
  for (Symbol s : order) {
    if (!first) Increment(code);
    first = false;
    code.resize(lengths[s], false);
    Bitstring w;
    for (bool b : code) w.push_back(b);
    words[s] = std::move(w);
  }
  return Codebook(CodingMode::kEntropy, std::move(words));
}

Codebook MakeCodebook(CodingMode mode, const std::vector<Rational>& dist) {
  return mode == CodingMode::kFixedLength ? FixedLengthCodebook(dist.size())
                                          : EntropyCodebook(dist);
}

bool VerifyPrefixFree(const std::vector<Bitstring>& words) {
  auto sorted = words;
  std::sort(sorted.begin(), sorted.end());
  // In lexicographic order a word's extensions follow it directly.
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i - 1].IsPrefixOf(sorted[i])) return false;
  }
  return true;
}

bool VerifyPrefixFree(const Codebook& c) {
  std::vector<Bitstring> present;
  for (const auto& w : c.words()) {
    if (w) present.push_back(*w);
  }
  return VerifyPrefixFree(present);
}

}  // namespace pvlc
