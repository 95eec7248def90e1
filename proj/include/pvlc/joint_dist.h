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

#ifndef PVLC_JOINT_DIST_H_
#define PVLC_JOINT_DIST_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pvlc/rational.h"

namespace pvlc {

using Symbol = std::uint32_t;

// One symbol per variable, in the distribution's variable order.
using Outcome = std::vector<Symbol>;

using VarList = std::vector<std::string>;

struct Alphabet {
  std::string name;
  std::size_t size = 1;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

// Exact probability table over a tuple of finite-alphabet variables.
//
// Only outcomes with positive mass are stored; alphabets keep their full
// size so zero-probability symbols still count toward cardinalities.
class JointDist {
 public:
  using Table = std::map<Outcome, Rational>;

  // Point mass on a single one-symbol variable named "_".
  JointDist();

  // Validates names (unique, nonempty), sizes (>= 1), outcome ranges,
  // nonnegativity, and that the entries sum to exactly one. Zero entries
  // are discarded. Throws ValidationError.
  static JointDist Create(std::vector<Alphabet> variables, Table table);

  // Distribution of a single variable with the given marginal.
  static JointDist FromMarginal(Alphabet variable,
                                const std::vector<Rational>& marginal);

  static JointDist Uniform(Alphabet variable);
  static JointDist PointMass(Alphabet variable, Symbol symbol);

  const std::vector<Alphabet>& variables() const { return variables_; }
  const Table& table() const { return table_; }
  std::size_t arity() const { return variables_.size(); }
  std::size_t support_size() const { return table_.size(); }

  bool Has(std::string_view name) const;
  // Throws ValidationError for unknown names.
  std::size_t IndexOf(std::string_view name) const;
  const Alphabet& variable(std::string_view name) const {
    return variables_[IndexOf(name)];
  }

  Rational Probability(const Outcome& outcome) const;

  // Marginal of one variable as a dense vector over its alphabet.
  std::vector<Rational> MarginalVector(std::string_view name) const;

  friend bool operator==(const JointDist&, const JointDist&) = default;

 private:
  std::vector<Alphabet> variables_;
  Table table_;
};

// Keeps `keep` in the given order. Throws on unknown or repeated names.
JointDist Marginalize(const JointDist& d, const VarList& keep);

// Distribution of the remaining variables given var == symbol. The
// conditioned variable is dropped. Throws ValidationError if the event has
// zero probability or the distribution has no other variable.
JointDist Condition(const JointDist& d, std::string_view var, Symbol symbol);

// Attaches `fresh` independent of every existing variable.
JointDist ProductExtend(const JointDist& d, const Alphabet& fresh,
                        const std::vector<Rational>& marginal);

// Replaces variables `group` by one variable `name` whose symbols index
// the positive-support tuples of `group` in lexicographic order. The tuples
// are appended to `labels` when non-null.
JointDist Flatten(const JointDist& d, const VarList& group,
                  const std::string& name,
                  std::vector<Outcome>* labels = nullptr);

}  // namespace pvlc

#endif  // PVLC_JOINT_DIST_H_
