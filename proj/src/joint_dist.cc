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
#include "pvlc/joint_dist.h"

#include <algorithm>
#include <set>
#include <utility>

#include "pvlc/errors.h"

namespace pvlc {
namespace {

std::vector<std::size_t> ResolveAll(const JointDist& d, const VarList& names) {
  std::vector<std::size_t> idx;
  idx.reserve(names.size());
  std::set<std::size_t> seen;
  for (const auto& name : names) {
    const std::size_t i = d.IndexOf(name);
    if (!seen.insert(i).second) {
      throw ValidationError("variable '" + name + "' listed twice");
    }
    idx.push_back(i);
  }
  return idx;
}

}  // namespace

JointDist::JointDist()
    : variables_{{"_", 1}}, table_{{Outcome{0}, Rational(1)}} {}

JointDist JointDist::Create(std::vector<Alphabet> variables, Table table) {
  if (variables.empty()) {
    throw ValidationError("distribution needs at least one variable");
  }
  std::set<std::string> names;
  for (const auto& v : variables) {
    if (v.name.empty()) throw ValidationError("variable with empty name");
    if (v.size < 1) {
      throw ValidationError("variable '" + v.name + "' has empty alphabet");
    }
    if (!names.insert(v.name).second) {
      throw ValidationError("duplicate variable '" + v.name + "'");
    }
  }
  JointDist d;
  d.variables_ = std::move(variables);
  d.table_.clear();
  Rational total = 0;
  for (auto& [outcome, p] : table) {
    if (outcome.size() != d.variables_.size()) {
      throw ValidationError("outcome arity does not match variable count");
    }
    for (std::size_t i = 0; i < outcome.size(); ++i) {
      if (outcome[i] >= d.variables_[i].size) {
        throw ValidationError("symbol " + std::to_string(outcome[i]) +
                              " out of range for '" + d.variables_[i].name +
                              "'");
      }
    }
    if (p < 0) throw ValidationError("negative probability " + ToString(p));
    if (p == 0) continue;
    total += p;
    d.table_.emplace(outcome, std::move(p));
  }
  if (total != 1) {
    throw ValidationError("probabilities sum to " + ToString(total) +
                          ", expected exactly 1");
  }
  return d;
}

JointDist JointDist::FromMarginal(Alphabet variable,
                                  const std::vector<Rational>& marginal) {
  if (marginal.size() != variable.size) {
    throw ValidationError("marginal length does not match alphabet of '" +
                          variable.name + "'");
  }
  Table table;
  for (std::size_t s = 0; s < marginal.size(); ++s) {
    table[{static_cast<Symbol>(s)}] = marginal[s];
  }
  return Create({std::move(variable)}, std::move(table));
}

JointDist JointDist::Uniform(Alphabet variable) {
  const auto n = static_cast<std::int64_t>(variable.size);
  std::vector<Rational> marginal(variable.size, MakeRational(1, n));
  return FromMarginal(std::move(variable), marginal);
}

JointDist JointDist::PointMass(Alphabet variable, Symbol symbol) {
  std::vector<Rational> marginal(variable.size, Rational(0));
  if (symbol >= variable.size) {
    throw ValidationError("point mass symbol out of range");
  }
  marginal[symbol] = 1;
  return FromMarginal(std::move(variable), marginal);
}

bool JointDist::Has(std::string_view name) const {
  return std::any_of(variables_.begin(), variables_.end(),
                     [&](const Alphabet& a) { return a.name == name; });
}

std::size_t JointDist::IndexOf(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == name) return i;
  }
  throw ValidationError("unknown variable '" + std::string(name) + "'");
}

Rational JointDist::Probability(const Outcome& outcome) const {
  const auto it = table_.find(outcome);
  return it == table_.end() ? Rational(0) : it->second;
}

std::vector<Rational> JointDist::MarginalVector(std::string_view name) const {
  const std::size_t i = IndexOf(name);
  std::vector<Rational> out(variables_[i].size, Rational(0));
  for (const auto& [outcome, p] : table_) out[outcome[i]] += p;
  return out;
}

JointDist Marginalize(const JointDist& d, const VarList& keep) {
  if (keep.empty()) throw ValidationError("marginalize: empty variable set");
  const auto idx = ResolveAll(d, keep);
  std::vector<Alphabet> vars;
  for (auto i : idx) vars.push_back(d.variables()[i]);
  JointDist::Table table;
  Outcome key(idx.size());
  for (const auto& [outcome, p] : d.table()) {
    for (std::size_t j = 0; j < idx.size(); ++j) key[j] = outcome[idx[j]];
    table[key] += p;
  }
  return JointDist::Create(std::move(vars), std::move(table));
}

JointDist Condition(const JointDist& d, std::string_view var, Symbol symbol) {
  const std::size_t ci = d.IndexOf(var);
  if (d.arity() < 2) {
    throw ValidationError("cannot condition a single-variable distribution");
  }
  Rational mass = 0;
  for (const auto& [outcome, p] : d.table()) {
    if (outcome[ci] == symbol) mass += p;
  }
  if (mass == 0) {
    throw ValidationError("conditioning event " + std::string(var) + "=" +
                          std::to_string(symbol) + " has zero probability");
  }
  std::vector<Alphabet> vars;
  for (std::size_t i = 0; i < d.arity(); ++i) {
    if (i != ci) vars.push_back(d.variables()[i]);
  }
  JointDist::Table table;
  for (const auto& [outcome, p] : d.table()) {
    if (outcome[ci] != symbol) continue;
    Outcome rest;
    rest.reserve(outcome.size() - 1);
    for (std::size_t i = 0; i < outcome.size(); ++i) {
      if (i != ci) rest.push_back(outcome[i]);
    }
    table[rest] += p / mass;
  }
  return JointDist::Create(std::move(vars), std::move(table));
}

JointDist ProductExtend(const JointDist& d, const Alphabet& fresh,
                        const std::vector<Rational>& marginal) {
  if (d.Has(fresh.name)) {
    throw ValidationError("variable '" + fresh.name + "' already present");
  }
  const auto attached = JointDist::FromMarginal(fresh, marginal);
  auto vars = d.variables();
  vars.push_back(fresh);
  JointDist::Table table;
  for (const auto& [outcome, p] : d.table()) {
    for (const auto& [w, q] : attached.table()) {
      Outcome extended = outcome;
      extended.push_back(w[0]);
      table.emplace(std::move(extended), p * q);
    }
  }
  return JointDist::Create(std::move(vars), std::move(table));
}

JointDist Flatten(const JointDist& d, const VarList& group,
                  const std::string& name, std::vector<Outcome>* labels) {
  const auto gidx = ResolveAll(d, group);
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < d.arity(); ++i) {
    if (std::find(gidx.begin(), gidx.end(), i) == gidx.end()) {
      rest.push_back(i);
    }
  }
  std::map<Outcome, Symbol> index;
  for (const auto& [outcome, p] : d.table()) {
    Outcome key;
    for (auto i : gidx) key.push_back(outcome[i]);
    index.emplace(std::move(key), 0);
  }
  Symbol next = 0;
  for (auto& [key, sym] : index) {
    sym = next++;
    if (labels != nullptr) labels->push_back(key);
  }
  std::vector<Alphabet> vars{{name, index.size()}};
  for (auto i : rest) vars.push_back(d.variables()[i]);
  JointDist::Table table;
  for (const auto& [outcome, p] : d.table()) {
    Outcome key;
    for (auto i : gidx) key.push_back(outcome[i]);
    Outcome flat{index.at(key)};
    for (auto i : rest) flat.push_back(outcome[i]);
    table[flat] += p;
  }
  return JointDist::Create(std::move(vars), std::move(table));
}

}  // namespace pvlc
