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

#ifndef PVLC_FRL_H_
#define PVLC_FRL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pvlc/joint_dist.h"

namespace pvlc {

// Layout of one private symbol's conditional P(Y | X = owner) on [0, 1).
// Segment k spans [cut_{k-1}, cut_k) with cut_{-1} = 0 and cut_last = 1;
// only interior cuts are stored. Zero-probability targets get no segment.
struct IntervalPartition {
  Symbol owner = 0;
  std::vector<Rational> cuts;
  std::vector<Symbol> segment_labels;
};

// Per private symbol, the order in which target symbols are laid out on
// [0, 1). An empty policy means canonical (ascending symbol index). Each
// order must be a permutation of that symbol's positive-support targets.
struct OrderingPolicy {
  std::vector<std::vector<Symbol>> order;

  bool canonical() const { return order.empty(); }
};

struct Atom {
  Rational begin;
  Rational end;

  Rational length() const { return end - begin; }
};

// Auxiliary variable U built by intersecting every private symbol's
// interval partition: U is independent of the private variable and the
// target is a function of (U, private).
struct FrlMechanism {
  std::vector<Atom> atoms;
  std::vector<Rational> p_u;
  // g[u][x]; nullopt for private symbols with zero mass (dropped).
  std::vector<std::vector<std::optional<Symbol>>> g;
  std::vector<IntervalPartition> partitions;  // indexed by private symbol
  // Over (U, private, target), named after the input variables.
  JointDist joint;
  std::vector<std::string> warnings;

  std::size_t size() const { return atoms.size(); }

  // Throws ValidationError when (u, x) is outside the positive support.
  Symbol Decode(Symbol u, Symbol x) const;

  // Atoms covering segment (x, y) with P(U = u | X = x, Y = y); empty when
  // (x, y) has zero mass. Atoms are listed in position order.
  std::vector<std::pair<Symbol, Rational>> Candidates(Symbol x,
                                                      Symbol y) const;
};

// `pxy` must have exactly two variables: private first, target second.
FrlMechanism FrlConstruct(const JointDist& pxy,
                          const OrderingPolicy& policy = {},
                          const std::string& u_name = "U");

// Entropy of the constructed U in bits. This upper-bounds the minimum
// entropy over all valid U; it is a surrogate, not the minimum itself.
double MechanismEntropy(const FrlMechanism& m);

struct OrderingSearchResult {
  OrderingPolicy policy;
  double entropy = 0.0;
  std::uint64_t evaluated = 0;
};

// Exhaustive search over per-symbol orderings for the lowest H(U). Throws
// ResourceLimitExceeded when the product of factorials exceeds `budget`.
OrderingSearchResult MinEntropySearch(const JointDist& pxy,
                                      std::uint64_t budget);

// |X| * prod(|U_j|) * (|Y| - 1) + 1.
BigInt CardinalityBound(const BigInt& x_size,
                        const std::vector<BigInt>& prior_u_sizes,
                        const BigInt& y_size);
std::uint64_t CardinalityBound(std::uint64_t x_size,
                               const std::vector<std::uint64_t>& prior_u_sizes,
                               std::uint64_t y_size);

// Human-readable atoms, P_U and g-table.
std::string DumpMechanism(const FrlMechanism& m);

}  // namespace pvlc

#endif  // PVLC_FRL_H_
