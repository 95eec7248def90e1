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

#ifndef PVLC_BOUNDS_H_
#define PVLC_BOUNDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pvlc/errors.h"
#include "pvlc/joint_dist.h"
#include "pvlc/sequential_chain.h"

namespace pvlc {

// Recursive caps on |U_i|: cap_1 = |X|(|Y_1| - 1) + 1 and
// cap_i = |X| cap_1 ... cap_{i-1} (|Y_i| - 1) + 1.
std::vector<BigInt> CardinalityCaps(const BigInt& x_size,
                                    const std::vector<BigInt>& target_sizes);

// sum_i ceil(log2 cap_i) + ceil(log2 |X|).
std::uint64_t UpperBoundCardinality(const BigInt& x_size,
                                    const std::vector<BigInt>& target_sizes);

// sum_i ceil(H(U_i)) + ceil(log2 |X|) over the chain's constructed stages.
// The stage entropies upper-bound the true per-stage minima, so this is an
// estimate of the sharper bound, never the bound itself.
struct EntropyEstimate {
  std::uint64_t bits = 0;
  std::vector<double> stage_entropies;
  static constexpr const char* kLabel =
      "estimate: construction entropies upper-bound the per-stage minima";
};
EntropyEstimate UpperBoundEntropyEstimate(const SequentialChain& chain);

// max over x of H(targets | X = x).
double LowerBound(const JointDist& p, const VarList& targets,
                  const std::string& private_var = "X");

struct BoundReport {
  std::uint64_t upper_cardinality = 0;
  std::optional<std::uint64_t> upper_entropy_estimate;
  double lower = 0.0;
  std::optional<double> measured;

  // lower <= measured <= upper_cardinality (within tol on the floats).
  bool SandwichHolds(double tol = 1e-9) const;
};

// X ~ Bern(p); file j bit i = Z_ij AND X with Z i.i.d. Bern(1/2). File j is
// variable "Yj" over [2^F], bit 0 being the most significant.
struct Example1Params {
  Rational p = MakeRational(1, 2);
  std::size_t N = 1;
  std::size_t K = 1;
  std::size_t F = 1;
};

// Throws ValidationError on bad parameters and ResourceLimitExceeded when
// the table would exceed `state_limit` entries.
JointDist Example1Build(const Example1Params& params,
                        std::uint64_t state_limit = kDefaultStateLimit);

// Upper bound over lower bound for the AND-of-bits family with |X| = 2,
// evaluated from the caps alone.
struct Example1Ratio {
  std::uint64_t upper_bits = 0;
  std::uint64_t lower_bits = 0;
  double ratio = 0.0;
};
Example1Ratio Example1RatioAt(std::size_t K, std::size_t F);

}  // namespace pvlc

#endif  // PVLC_BOUNDS_H_
