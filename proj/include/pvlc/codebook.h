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

#ifndef PVLC_CODEBOOK_H_
#define PVLC_CODEBOOK_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "pvlc/bitstring.h"
#include "pvlc/joint_dist.h"

namespace pvlc {

enum class CodingMode { kFixedLength, kEntropy };

std::string_view CodingModeName(CodingMode mode);
// "fixed" or "entropy". Throws ValidationError.
CodingMode ParseCodingMode(std::string_view name);

// Prefix-free binary code for one finite alphabet.
class Codebook {
 public:
  // `words[s]` is nullopt for symbols the code cannot emit (zero mass under
  // the design distribution). Throws ValidationError if not prefix-free.
  Codebook(CodingMode mode, std::vector<std::optional<Bitstring>> words);

  CodingMode mode() const { return mode_; }
  std::size_t alphabet_size() const { return words_.size(); }
  const std::vector<std::optional<Bitstring>>& words() const { return words_; }

  // Throws ValidationError for symbols without a codeword.
  const Bitstring& Encode(Symbol s) const;

  // Reads one codeword starting at *pos and advances it.
  Symbol DecodeNext(const Bitstring& bits, std::size_t* pos) const;
  // The slot must hold exactly one codeword.
  Symbol DecodeExact(const Bitstring& slot) const;

  Rational KraftSum() const;
  Rational ExpectedLength(const std::vector<Rational>& dist) const;

 private:
  CodingMode mode_;
  std::vector<std::optional<Bitstring>> words_;
  std::map<Bitstring, Symbol> lookup_;
  std::size_t max_length_ = 0;
};

// ceil(log2 n) bits per symbol; a single-symbol alphabet gets the empty word.
Codebook FixedLengthCodebook(std::size_t alphabet_size);

// Canonical Huffman code over the positive-mass symbols of `dist`. Merges
// break ties by the smaller lowest symbol index; codewords are then
// assigned canonically by (length, symbol).
Codebook EntropyCodebook(const std::vector<Rational>& dist);

Codebook MakeCodebook(CodingMode mode, const std::vector<Rational>& dist);

bool VerifyPrefixFree(const std::vector<Bitstring>& words);
bool VerifyPrefixFree(const Codebook& c);

}  // namespace pvlc

#endif  // PVLC_CODEBOOK_H_
