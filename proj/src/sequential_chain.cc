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
#include "pvlc/sequential_chain.h"

#include <algorithm>
#include <utility>

#include "pvlc/information.h"

namespace pvlc {
namespace {

void CheckLimit(std::size_t states, std::uint64_t limit) {
  if (states > limit) {
    throw ResourceLimitExceeded("chain joint has " + std::to_string(states) +
                                " states, limit is " + std::to_string(limit));
  }
}

}  // namespace

Symbol ChainStage::CompoundSymbol(const Outcome& x_and_prefix) const {
  const auto it = compound_index.find(x_and_prefix);
  if (it == compound_index.end()) {
    throw ValidationError("stage " + u_name +
                          ": private/prefix tuple has zero probability");
  }
  return it->second;
}

SequentialChain SequentialChain::Start(JointDist base,
                                       const std::string& private_var,
                                       std::uint64_t state_limit) {
  SequentialChain chain;
  base.IndexOf(private_var);
  for (const auto& v : base.variables()) {
    if (v.name.size() > 1 && v.name[0] == 'U' &&
        std::all_of(v.name.begin() + 1, v.name.end(),
                    [](char c) { return c >= '0' && c <= '9'; })) {
      throw ValidationError("variable name '" + v.name +
                            "' is reserved for chain stages");
    }
  }
  chain.joint_ = Marginalize(base, {private_var});
  chain.base_ = std::move(base);
  chain.private_var_ = private_var;
  chain.state_limit_ = state_limit;
  return chain;
}

VarList SequentialChain::u_names() const {
  VarList names;
  for (const auto& s : stages_) names.push_back(s.u_name);
  return names;
}

JointDist SequentialChain::LiftedJoint(
    const VarList& targets, const std::vector<ChainStage>& stages) const {
  VarList keep{private_var_};
  keep.insert(keep.end(), targets.begin(), targets.end());
  JointDist current = Marginalize(base_, keep);
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const auto& stage = stages[i];
    const std::size_t xi = current.IndexOf(private_var_);
    const std::size_t yi = current.IndexOf(stage.target);
    const std::size_t first_u = current.arity() - i;
    JointDist::Table table;
    Outcome key;
    for (const auto& [o, p] : current.table()) {
      key.assign(1, o[xi]);
      key.insert(key.end(), o.begin() + first_u, o.end());
      const Symbol cs = stage.CompoundSymbol(key);
      for (const auto& [u, w] : stage.mechanism.Candidates(cs, o[yi])) {
        Outcome extended = o;
        extended.push_back(u);
        table.emplace(std::move(extended), p * w);
      }
    }
    CheckLimit(table.size(), state_limit_);
    auto vars = current.variables();
    vars.push_back({stage.u_name, stage.mechanism.size()});
    current = JointDist::Create(std::move(vars), std::move(table));
  }
  return current;
}

JointDist SequentialChain::StageInput(const std::string& target) const {
  VarList targets = targets_;
  if (std::find(targets.begin(), targets.end(), target) == targets.end()) {
    targets.push_back(target);
  }
  const auto joint = LiftedJoint(targets, stages_);
  VarList keep{private_var_};
  for (const auto& u : u_names()) keep.push_back(u);
  keep.push_back(target);
  return Marginalize(joint, keep);
}

SequentialChain FrlExtend(const SequentialChain& chain,
                          const std::string& target,
                          const OrderingPolicy& policy) {
  if (target == chain.private_var()) {
    throw ValidationError("target must differ from the private variable");
  }
  chain.base().IndexOf(target);
  const auto& x = chain.private_var();
  const VarList prior = chain.u_names();
  if (!prior.empty() && !ExactIndependent(chain.joint(), prior, {x})) {
    throw InvariantViolation("chain prefix is not independent of " + x +
                             "; cannot extend");
  }

  const JointDist input = chain.StageInput(target);
  VarList group{x};
  group.insert(group.end(), prior.begin(), prior.end());
  ChainStage stage;
  stage.target = target;
  stage.u_name = "U" + std::to_string(chain.size() + 1);
  std::string compound_name = x;
  for (const auto& u : prior) compound_name += "," + u;
  const JointDist flat = Flatten(input, group, "(" + compound_name + ")",
                                 &stage.compound);
  for (std::size_t c = 0; c < stage.compound.size(); ++c) {
    stage.compound_index.emplace(stage.compound[c], static_cast<Symbol>(c));
  }
  stage.mechanism = FrlConstruct(flat, policy, stage.u_name);

  SequentialChain next = chain;
  if (std::find(next.targets_.begin(), next.targets_.end(), target) ==
      next.targets_.end()) {
    next.targets_.push_back(target);
  }
  next.stages_.push_back(std::move(stage));
  next.joint_ = next.LiftedJoint(next.targets_, next.stages_);

  const VarList us = next.u_names();
  if (!ExactIndependent(next.joint_, us, {x})) {
    throw InvariantViolation("extended chain leaks " + x);
  }
  VarList given = us;
  given.push_back(x);
  if (!IsFunctionOf(next.joint_, {target}, given)) {
    throw InvariantViolation(target + " is not a function of (" + x +
                             ", U_1..U_k)");
  }
  std::vector<std::uint64_t> sizes;
  for (std::size_t i = 0; i + 1 < next.stages_.size(); ++i) {
    sizes.push_back(next.stages_[i].mechanism.size());
  }
  const auto bound =
      CardinalityBound(next.joint_.variable(x).size, sizes,
                       next.base_.variable(target).size);
  if (next.stages_.back().mechanism.size() > bound) {
    throw InvariantViolation("stage " + next.stages_.back().u_name +
                             " exceeds its cardinality bound");
  }
  return next;
}

SequentialChain BuildChain(const JointDist& base, const VarList& targets,
                           const std::string& private_var,
                           std::uint64_t state_limit) {
  auto chain = SequentialChain::Start(base, private_var, state_limit);
  for (const auto& t : targets) chain = FrlExtend(chain, t);
  return chain;
}

}  // namespace pvlc
