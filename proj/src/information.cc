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
#include "pvlc/information.h"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "pvlc/errors.h"

namespace pvlc {
namespace {

double PlogP(const Rational& p) {
  if (p <= 0 || p == 1) return 0.0;
  const double v = ToDouble(p);
  return -v * std::log2(v);
}

VarList Concat(const VarList& a, const VarList& b) {
  VarList out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void RequireDisjoint(const VarList& a, const VarList& b) {
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (x == y) throw ValidationError("variable sets overlap on '" + x + "'");
    }
  }
}

// Joint table over (given, target) grouped by the given-prefix.
template <typename Fn>
void ForEachGroup(const JointDist& d, const VarList& target,
                  const VarList& given, Fn&& fn) {
  const auto joint = Marginalize(d, Concat(given, target));
  const std::size_t g = given.size();
  auto it = joint.table().begin();
  while (it != joint.table().end()) {
    auto end = it;
    while (end != joint.table().end() &&
           std::equal(it->first.begin(), it->first.begin() + g,
                      end->first.begin())) {
      ++end;
    }
    fn(it, end);
    it = end;
  }
}

}  // namespace

double Entropy(const std::vector<Rational>& marginal) {
  double h = 0.0;
  for (const auto& p : marginal) h += PlogP(p);
  return h;
}

double Entropy(const JointDist& d) {
  double h = 0.0;
  for (const auto& [outcome, p] : d.table()) h += PlogP(p);
  return h;
}

double Entropy(const JointDist& d, const VarList& vars) {
  return Entropy(Marginalize(d, vars));
}

double ConditionalEntropy(const JointDist& d, const VarList& target,
                          const VarList& given) {
  RequireDisjoint(target, given);
  if (given.empty()) return Entropy(d, target);
  double h = 0.0;
  ForEachGroup(d, target, given, [&](auto begin, auto end) {
    Rational mass = 0;
    for (auto it = begin; it != end; ++it) mass += it->second;
    double group = 0.0;
    for (auto it = begin; it != end; ++it) group += PlogP(it->second / mass);
    h += ToDouble(mass) * group;
  });
  return h;
}

double MutualInformation(const JointDist& d, const VarList& a,
                         const VarList& b) {
  RequireDisjoint(a, b);
  const auto pa = Marginalize(d, a);
  const auto pb = Marginalize(d, b);
  const auto pab = Marginalize(d, Concat(a, b));
  double sum = 0.0;
  Outcome ka(a.size()), kb(b.size());
  for (const auto& [outcome, p] : pab.table()) {
    std::copy(outcome.begin(), outcome.begin() + a.size(), ka.begin());
    std::copy(outcome.begin() + a.size(), outcome.end(), kb.begin());
    const Rational ratio = p / (pa.Probability(ka) * pb.Probability(kb));
    if (ratio != 1) sum += ToDouble(p) * std::log2(ToDouble(ratio));
  }
  return sum < 0.0 ? 0.0 : sum;
}

bool ExactIndependent(const JointDist& d, const VarList& a, const VarList& b) {
  RequireDisjoint(a, b);
  const auto pa = Marginalize(d, a);
  const auto pb = Marginalize(d, b);
  const auto pab = Marginalize(d, Concat(a, b));
  // Every cell of supp(a) x supp(b) must be present in the joint.
  if (pab.support_size() != pa.support_size() * pb.support_size()) {
    return false;
  }
  Outcome ka(a.size()), kb(b.size());
  for (const auto& [outcome, p] : pab.table()) {
    std::copy(outcome.begin(), outcome.begin() + a.size(), ka.begin());
    std::copy(outcome.begin() + a.size(), outcome.end(), kb.begin());
    if (p != pa.Probability(ka) * pb.Probability(kb)) return false;
  }
  return true;
}

bool IsFunctionOf(const JointDist& d, const VarList& target,
                  const VarList& given) {
  RequireDisjoint(target, given);
  if (given.empty()) return Marginalize(d, target).support_size() == 1;
  bool deterministic = true;
  ForEachGroup(d, target, given, [&](auto begin, auto end) {
    if (std::next(begin) != end) deterministic = false;
  });
  return deterministic;
}

}  // namespace pvlc
