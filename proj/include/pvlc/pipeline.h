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

#ifndef PVLC_PIPELINE_H_
#define PVLC_PIPELINE_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pvlc/bounds.h"
#include "pvlc/codebook.h"
#include "pvlc/errors.h"
#include "pvlc/joint_dist.h"
#include "pvlc/one_time_pad.h"
#include "pvlc/sequential_chain.h"
#include "pvlc/transcript.h"

namespace pvlc {

// Ordered file requests d_1..d_K, 1-based. File n is variable "Yn".
struct DemandVector {
  std::vector<std::size_t> files;

  std::size_t size() const { return files.size(); }
  friend bool operator==(const DemandVector&, const DemandVector&) = default;
};

std::string FileVar(std::size_t n);
// Number of consecutive file variables Y1, Y2, ... present in `p`.
std::size_t CountFiles(const JointDist& p);
// Pairwise distinct, each in [1, N], 1 <= K <= N. Throws ValidationError.
void ValidateDemands(const DemandVector& d, std::size_t num_files);
VarList DemandTargets(const DemandVector& d);
// "1,2,3" -> {1,2,3}. Throws ValidationError.
DemandVector ParseDemands(const std::string& text);
std::string FormatDemands(const DemandVector& d);

// Chain plus the public codebooks: the pad code over [|X|] and one code
// per stage. Everything here depends only on the distribution, the demands
// seen so far and the stage index, so encoder and decoder derive the same
// scheme independently.
class Scheme {
 public:
  static Scheme Start(const JointDist& base, CodingMode mode,
                      const std::string& private_var = "X",
                      std::uint64_t state_limit = kDefaultStateLimit);
  static Scheme Build(const JointDist& base, const VarList& targets,
                      CodingMode mode, const std::string& private_var = "X",
                      std::uint64_t state_limit = kDefaultStateLimit);

  void Extend(const std::string& target);

  const SequentialChain& chain() const { return chain_; }
  CodingMode mode() const { return mode_; }
  std::size_t size() const { return chain_.size(); }
  std::uint32_t key_size() const { return key_size_; }
  const Codebook& pad_codebook() const { return pad_codebook_; }
  const Codebook& stage_codebook(std::size_t i) const {
    return stage_codebooks_.at(i);
  }

 private:
  Scheme(SequentialChain chain, CodingMode mode);

  SequentialChain chain_;
  CodingMode mode_;
  std::uint32_t key_size_;
  Codebook pad_codebook_;
  std::vector<Codebook> stage_codebooks_;
};

// Source of the randomness that picks U_i given (x, y, u_<i).
class CouplingSource {
 public:
  virtual ~CouplingSource() = default;
  // Index into `weights` (positive, summing to one).
  virtual std::size_t Pick(std::span<const Rational> weights) = 0;
};

class SeededCoupling : public CouplingSource {
 public:
  explicit SeededCoupling(std::uint64_t seed) : rng_(seed) {}
  std::size_t Pick(std::span<const Rational> weights) override;

 private:
  std::mt19937_64 rng_;
};

// Walks every pick sequence in lexicographic order. Run the consumer, then
// call Advance(); the weight is the product of the picked probabilities.
class OdometerCoupling : public CouplingSource {
 public:
  std::size_t Pick(std::span<const Rational> weights) override;
  const Rational& weight() const { return weight_; }
  // Prepares the next sequence; false once all have been visited.
  bool Advance();

 private:
  std::vector<std::size_t> digits_;
  std::vector<std::size_t> arity_;
  std::size_t depth_ = 0;
  Rational weight_ = 1;
};

// Slot-at-a-time encoder. Slot i sees only demand i, the key and the
// public cache of its own earlier slots, from which it recovers
// U_1..U_{i-1}.
class SequentialEncoder {
 public:
  // Extends the shared scheme in place when a demand outruns it.
  explicit SequentialEncoder(std::shared_ptr<Scheme> scheme);

  // Pad slot: fixed-length code of (x + key) mod |X|. Must come first.
  Bitstring Begin(Symbol x, const PadKey& key);
  // Next slot for a target whose realized value is `value`. Builds the
  // stage when the scheme does not have it yet.
  Bitstring Next(const std::string& target, Symbol value,
                 CouplingSource& draws);

  const std::vector<Bitstring>& public_cache() const { return public_cache_; }
  const Scheme& scheme() const { return *scheme_; }

 private:
  std::shared_ptr<Scheme> scheme_;
  std::optional<Symbol> x_;
  std::vector<Bitstring> public_cache_;
};

// Realization is an outcome over p's variables; it must have positive mass.
Transcript EncodeSession(const JointDist& p, const Outcome& realization,
                         const DemandVector& demands, const PadKey& key,
                         const Scheme& scheme, CouplingSource& draws);

struct DecodedSession {
  Symbol x = 0;
  std::vector<Symbol> files;
};

// Throws ValidationError for corrupted or mismatched transcripts.
DecodedSession DecodeSession(const Transcript& t, const PadKey& key,
                             const DemandVector& demands,
                             const Scheme& scheme);

struct SessionOutcome {
  const Outcome* realization = nullptr;
  Symbol x = 0;
  PadKey key;
  const Transcript* transcript = nullptr;
  Rational weight;  // P(x, y) * P(key) * prod P(u_i | ...)
};

// Runs the real encoder on every (realization, key, coupling path) with
// positive weight. Throws ResourceLimitExceeded past `state_limit` paths.
void ForEachOutcome(const JointDist& p, const DemandVector& demands,
                    const Scheme& scheme, std::uint64_t state_limit,
                    const std::function<void(const SessionOutcome&)>& visit);

// Exact joint of (C, X, W); transcript symbols index `transcripts`.
struct TranscriptDistribution {
  JointDist joint;
  std::vector<std::string> transcripts;
  std::vector<std::size_t> lengths;
};

TranscriptDistribution BuildTranscriptDistribution(
    const JointDist& p, const DemandVector& demands, const Scheme& scheme,
    std::uint64_t state_limit = kDefaultStateLimit);

// Sends the demanded files uncoded (F bits each); leaks in general.
TranscriptDistribution BuildUncodedBaseline(
    const JointDist& p, const DemandVector& demands,
    std::uint64_t state_limit = kDefaultStateLimit);

struct LeakageReport {
  bool exact_zero = false;
  double bits = 0.0;
};
LeakageReport AuditLeakage(const TranscriptDistribution& td);

// E[L(C) | W = w] for every key value.
struct LengthReport {
  std::vector<Rational> per_key;
  Rational max;
  bool equal_over_keys = true;
};
LengthReport ExpectedLength(const TranscriptDistribution& td);

struct LosslessReport {
  std::uint64_t outcomes = 0;
  std::uint64_t failures = 0;
  bool ok() const { return failures == 0; }
};
LosslessReport VerifyLossless(const JointDist& p, const DemandVector& demands,
                              const Scheme& scheme,
                              std::uint64_t state_limit = kDefaultStateLimit);

// Bounds for a demand vector: the cardinality bound from the file
// alphabets, the entropy estimate from the scheme's stages and the converse.
BoundReport SessionBounds(const JointDist& p, const DemandVector& demands,
                          const Scheme& scheme,
                          const std::optional<Rational>& measured = {});

struct SweepRow {
  DemandVector demands;
  Rational expected_length;  // max over keys
  BoundReport bounds;
  bool leakage_zero = false;
  bool lossless = false;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::size_t worst = 0;  // row with the largest expected length
};

// Every ordered choice of K distinct files.
SweepResult WorstCaseSweep(const JointDist& p, std::size_t K, CodingMode mode,
                           std::uint64_t state_limit = kDefaultStateLimit);

}  // namespace pvlc

#endif  // PVLC_PIPELINE_H_
