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

#ifndef PVLC_SEQUENTIAL_CHAIN_H_
#define PVLC_SEQUENTIAL_CHAIN_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pvlc/errors.h"
#include "pvlc/frl.h"
#include "pvlc/joint_dist.h"

namespace pvlc {

// Stage i of a chain: U_i built by the FRL construction with the compound
// (X, U_1..U_{i-1}) as private variable and the stage's target as Y.
struct ChainStage {
  std::string target;
  std::string u_name;
  // Compound symbol -> (x, u_1, ..., u_{i-1}); positive-support tuples only.
  std::vector<Outcome> compound;
  std::map<Outcome, Symbol> compound_index;
  FrlMechanism mechanism;

  // Throws ValidationError when the tuple has zero mass.
  Symbol CompoundSymbol(const Outcome& x_and_prefix) const;
};

class SequentialChain {
 public:
  // Empty chain over `base`, which must contain `private_var`.
  static SequentialChain Start(JointDist base,
                               const std::string& private_var = "X",
                               std::uint64_t state_limit = kDefaultStateLimit);

  const JointDist& base() const { return base_; }
  const std::string& private_var() const { return private_var_; }
  const std::vector<ChainStage>& stages() const { return stages_; }
  std::size_t size() const { return stages_.size(); }
  std::uint64_t state_limit() const { return state_limit_; }

  // Over (private, each distinct target in first-use order, U_1..U_k).
  const JointDist& joint() const { return joint_; }

  VarList u_names() const;

  // P(private, U_1..U_k, target): the input the next stage is built from.
  JointDist StageInput(const std::string& target) const;

 private:
  friend SequentialChain FrlExtend(const SequentialChain&, const std::string&,
                                   const OrderingPolicy&);

  SequentialChain() = default;

  JointDist LiftedJoint(const VarList& targets,
                        const std::vector<ChainStage>& stages) const;

  JointDist base_;
  std::string private_var_;
  std::uint64_t state_limit_ = kDefaultStateLimit;
  VarList targets_;
  std::vector<ChainStage> stages_;
  JointDist joint_;
};

// Appends U_{k+1} for `target`. Requires U_1..U_k independent of the
// private variable (throws InvariantViolation otherwise) and verifies,
// exactly, before returning:
//   U_1..U_{k+1} independent of X,
//   target a function of (X, U_1..U_{k+1}),
//   |U_{k+1}| <= |X| |U_1|...|U_k| (|Y| - 1) + 1.
// The policy orders target symbols per compound symbol of this stage.
SequentialChain FrlExtend(const SequentialChain& chain,
                          const std::string& target,
                          const OrderingPolicy& policy = {});

// Chain with one stage per target, canonical orderings.
SequentialChain BuildChain(const JointDist& base, const VarList& targets,
                           const std::string& private_var = "X",
                           std::uint64_t state_limit = kDefaultStateLimit);

}  // namespace pvlc

#endif  // PVLC_SEQUENTIAL_CHAIN_H_
