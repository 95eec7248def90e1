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
#include "pvlc/bounds.h"

#include <algorithm>

#include "pvlc/information.h"

namespace pvlc {

std::vector<BigInt> CardinalityCaps(const BigInt& x_size,
                                    const std::vector<BigInt>& target_sizes) {
  std::vector<BigInt> caps;
  for (const auto& y : target_sizes) {
    caps.push_back(CardinalityBound(x_size, caps, y));
  }
  return caps;
}

std::uint64_t UpperBoundCardinality(const BigInt& x_size,
                                    const std::vector<BigInt>& target_sizes) {
  std::uint64_t bits = CeilLog2(x_size);
  for (const auto& cap : CardinalityCaps(x_size, target_sizes)) {
    bits += CeilLog2(cap);
  }
  return bits;
}

EntropyEstimate UpperBoundEntropyEstimate(const SequentialChain& chain) {
  EntropyEstimate e;
  e.bits = CeilLog2(std::uint64_t{
      chain.joint().variable(chain.private_var()).size});
  for (const auto& stage : chain.stages()) {
    const double h = MechanismEntropy(stage.mechanism);
    e.stage_entropies.push_back(h);
    e.bits += CeilBits(h);
  }
  return e;
}

double LowerBound(const JointDist& p, const VarList& targets,
                  const std::string& private_var) {
  VarList keep{private_var};
  keep.insert(keep.end(), targets.begin(), targets.end());
  const JointDist joint = Marginalize(p, keep);
  const auto px = joint.MarginalVector(private_var);
  double best = 0.0;
  for (std::size_t x = 0; x < px.size(); ++x) {
    if (px[x] == 0) continue;
    best = std::max(best,
                    Entropy(Condition(joint, private_var,
                                      static_cast<Symbol>(x))));
  }
  return best;
}

bool BoundReport::SandwichHolds(double tol) const {
  const double upper = static_cast<double>(upper_cardinality);
  if (!measured) return lower <= upper + tol;
  return lower <= *measured + tol && *measured <= upper + tol;
}

JointDist Example1Build(const Example1Params& params,
                        std::uint64_t state_limit) {
  if (params.p <= 0 || params.p >= 1) {
    throw ValidationError("AND-of-bits family needs p in (0, 1)");
  }
  if (params.N < 1 || params.F < 1 || params.K < 1 || params.K > params.N) {
    throw ValidationError("AND-of-bits family needs N, F >= 1 and 1 <= K <= N");
  }
  const std::size_t bits = params.F * params.N;
  if (params.F > 32 || bits >= 63 || (std::uint64_t{1} << bits) >= state_limit) {
    throw ResourceLimitExceeded("AND-of-bits table with F*N = " +
                                std::to_string(bits) +
                                " bits exceeds the state limit");
  }
  const std::uint64_t file_size = std::uint64_t{1} << params.F;
  const std::uint64_t combos = std::uint64_t{1} << bits;
  std::vector<Alphabet> vars{{"X", 2}};
  for (std::size_t j = 1; j <= params.N; ++j) {
    vars.push_back({"Y" + std::to_string(j), file_size});
  }
  JointDist::Table table;
  table[Outcome(params.N + 1, 0)] = 1 - params.p;
  const Rational each = params.p / Rational(BigInt(combos));
  for (std::uint64_t z = 0; z < combos; ++z) {
    Outcome o{1};
    for (std::size_t j = 0; j < params.N; ++j) {
      o.push_back(static_cast<Symbol>((z >> (j * params.F)) & (file_size - 1)));
    }
    table[o] += each;
  }
  return JointDist::Create(std::move(vars), std::move(table));
}

Example1Ratio Example1RatioAt(std::size_t K, std::size_t F) {
  if (K < 1 || F < 1) throw ValidationError("ratio needs K, F >= 1");
  const std::vector<BigInt> sizes(K, BigInt(1) << F);
  Example1Ratio r;
  r.upper_bits = UpperBoundCardinality(BigInt(2), sizes);
  r.lower_bits = K * F;
  r.ratio = static_cast<double>(r.upper_bits) /
            static_cast<double>(r.lower_bits);
  return r;
}

}  // namespace pvlc
