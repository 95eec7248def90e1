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
#include "pvlc/frl.h"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "pvlc/errors.h"
#include "pvlc/information.h"

namespace pvlc {
namespace {

struct Conditionals {
  std::vector<Rational> p_x;
  std::vector<std::vector<Rational>> p_y_given_x;  // [x][y]
};

Conditionals SplitJoint(const JointDist& pxy) {
  if (pxy.arity() != 2) {
    throw ValidationError(
        "FRL input must have exactly two variables (private, target)");
  }
  const std::size_t nx = pxy.variables()[0].size;
  const std::size_t ny = pxy.variables()[1].size;
  Conditionals c;
  c.p_x.assign(nx, Rational(0));
  c.p_y_given_x.assign(nx, std::vector<Rational>(ny, Rational(0)));
  for (const auto& [o, p] : pxy.table()) {
    c.p_x[o[0]] += p;
    c.p_y_given_x[o[0]][o[1]] += p;
  }
  for (std::size_t x = 0; x < nx; ++x) {
    if (c.p_x[x] == 0) continue;
    for (auto& q : c.p_y_given_x[x]) q /= c.p_x[x];
  }
  return c;
}

std::vector<Symbol> PositiveSupport(const std::vector<Rational>& row) {
  std::vector<Symbol> out;
  for (std::size_t y = 0; y < row.size(); ++y) {
    if (row[y] > 0) out.push_back(static_cast<Symbol>(y));
  }
  return out;
}

std::vector<Symbol> OrderFor(const OrderingPolicy& policy, Symbol x,
                             const std::vector<Rational>& row) {
  auto support = PositiveSupport(row);
  if (policy.canonical()) return support;
  const auto& order = policy.order.at(x);
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != support) {
    throw ValidationError(
        "ordering for private symbol " + std::to_string(x) +
        " is not a permutation of its positive-support targets");
  }
  return order;
}

IntervalPartition Lay(Symbol x, const std::vector<Symbol>& order,
                      const std::vector<Rational>& row) {
  IntervalPartition part;
  part.owner = x;
  Rational cum = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    part.segment_labels.push_back(order[k]);
    cum += row[order[k]];
    if (k + 1 < order.size()) part.cuts.push_back(cum);
  }
  return part;
}

std::pair<Rational, Rational> SegmentAt(const IntervalPartition& part,
                                        std::size_t k) {
  Rational begin = k == 0 ? Rational(0) : part.cuts[k - 1];
  Rational end = k == part.cuts.size() ? Rational(1) : part.cuts[k];
  return {std::move(begin), std::move(end)};
}

std::vector<Atom> AtomsFromCuts(const std::set<Rational>& cuts) {
  std::vector<Atom> atoms;
  Rational prev = 0;
  for (const auto& c : cuts) {
    atoms.push_back({prev, c});
    prev = c;
  }
  atoms.push_back({prev, Rational(1)});
  return atoms;
}

}  // namespace

Symbol FrlMechanism::Decode(Symbol u, Symbol x) const {
  if (u >= g.size() || x >= g[u].size() || !g[u][x].has_value()) {
    throw ValidationError("(u=" + std::to_string(u) + ", x=" +
                          std::to_string(x) +
                          ") is outside the mechanism's support");
  }
  return *g[u][x];
}

std::vector<std::pair<Symbol, Rational>> FrlMechanism::Candidates(
    Symbol x, Symbol y) const {
  std::vector<std::pair<Symbol, Rational>> out;
  if (x >= partitions.size()) return out;
  const auto& part = partitions[x];
  const auto& labels = part.segment_labels;
  const auto it = std::find(labels.begin(), labels.end(), y);
  if (it == labels.end()) return out;
  const auto [begin, end] =
      SegmentAt(part, static_cast<std::size_t>(it - labels.begin()));
  const Rational length = end - begin;
  auto first = std::lower_bound(
      atoms.begin(), atoms.end(), begin,
      [](const Atom& a, const Rational& v) { return a.begin < v; });
  for (auto a = first; a != atoms.end() && a->end <= end; ++a) {
    out.emplace_back(static_cast<Symbol>(a - atoms.begin()),
                     a->length() / length);
  }
  return out;
}

FrlMechanism FrlConstruct(const JointDist& pxy, const OrderingPolicy& policy,
                          const std::string& u_name) {
  const auto cond = SplitJoint(pxy);
  const std::size_t nx = cond.p_x.size();
  if (!policy.canonical() && policy.order.size() != nx) {
    throw ValidationError("ordering policy must list one order per symbol of '" +
                          pxy.variables()[0].name + "'");
  }
  FrlMechanism m;
  m.partitions.resize(nx);
  std::set<Rational> cuts;
  for (Symbol x = 0; x < nx; ++x) {
    m.partitions[x].owner = x;
    if (cond.p_x[x] == 0) {
      m.warnings.push_back("private symbol " + std::to_string(x) +
                           " has zero mass; dropped");
      continue;
    }
    const auto order = OrderFor(policy, x, cond.p_y_given_x[x]);
    m.partitions[x] = Lay(x, order, cond.p_y_given_x[x]);
    cuts.insert(m.partitions[x].cuts.begin(), m.partitions[x].cuts.end());
  }
  m.atoms = AtomsFromCuts(cuts);
  m.g.assign(m.atoms.size(), std::vector<std::optional<Symbol>>(nx));
  for (std::size_t u = 0; u < m.atoms.size(); ++u) {
    m.p_u.push_back(m.atoms[u].length());
    for (Symbol x = 0; x < nx; ++x) {
      if (cond.p_x[x] == 0) continue;
      const auto& part = m.partitions[x];
      // First segment whose end lies beyond the atom's start.
      const auto k = static_cast<std::size_t>(
          std::upper_bound(part.cuts.begin(), part.cuts.end(),
                           m.atoms[u].begin) -
          part.cuts.begin());
      m.g[u][x] = part.segment_labels[k];
    }
  }
  JointDist::Table table;
  for (std::size_t u = 0; u < m.atoms.size(); ++u) {
    for (Symbol x = 0; x < nx; ++x) {
      if (!m.g[u][x]) continue;
      table[{static_cast<Symbol>(u), x, *m.g[u][x]}] =
          cond.p_x[x] * m.p_u[u];
    }
  }
  std::vector<Alphabet> vars{{u_name, m.atoms.size()}, pxy.variables()[0],
                             pxy.variables()[1]};
  m.joint = JointDist::Create(std::move(vars), std::move(table));

  const auto& xn = pxy.variables()[0].name;
  const auto& yn = pxy.variables()[1].name;
  if (Marginalize(m.joint, {xn, yn}) != pxy) {
    throw InvariantViolation("FRL joint does not reproduce P(X,Y)");
  }
  if (!ExactIndependent(m.joint, {u_name}, {xn})) {
    throw InvariantViolation("FRL output U is not independent of " + xn);
  }
  const auto bound = CardinalityBound(nx, {}, pxy.variables()[1].size);
  if (m.atoms.size() > bound) {
    throw InvariantViolation("FRL atom count exceeds cardinality bound");
  }
  return m;
}

double MechanismEntropy(const FrlMechanism& m) { return Entropy(m.p_u); }

OrderingSearchResult MinEntropySearch(const JointDist& pxy,
                                      std::uint64_t budget) {
  const auto cond = SplitJoint(pxy);
  const std::size_t nx = cond.p_x.size();
  std::vector<std::vector<Symbol>> orders(nx);
  std::uint64_t total = 1;
  for (std::size_t x = 0; x < nx; ++x) {
    if (cond.p_x[x] == 0) continue;
    orders[x] = PositiveSupport(cond.p_y_given_x[x]);
    for (std::uint64_t k = 2; k <= orders[x].size(); ++k) {
      if (total > budget / k) {
        throw ResourceLimitExceeded(
            "ordering search exceeds budget of " + std::to_string(budget) +
            " permutations; use the canonical ordering instead");
      }
      total *= k;
    }
  }
  if (total > budget) {
    throw ResourceLimitExceeded("ordering search exceeds budget");
  }

  OrderingSearchResult best;
  bool have = false;
  while (true) {
    std::set<Rational> cuts;
    for (std::size_t x = 0; x < nx; ++x) {
      if (orders[x].empty()) continue;
      const auto part =
          Lay(static_cast<Symbol>(x), orders[x], cond.p_y_given_x[x]);
      cuts.insert(part.cuts.begin(), part.cuts.end());
    }
    std::vector<Rational> lengths;
    for (const auto& a : AtomsFromCuts(cuts)) lengths.push_back(a.length());
    const double h = Entropy(lengths);
    ++best.evaluated;
    if (!have || h < best.entropy - 1e-12) {
      best.entropy = h;
      best.policy.order = orders;
      have = true;
    }
    std::size_t x = nx;
    while (x > 0) {
      --x;
      if (std::next_permutation(orders[x].begin(), orders[x].end())) break;
      if (x == 0) return best;
    }
  }
}

BigInt CardinalityBound(const BigInt& x_size,
                        const std::vector<BigInt>& prior_u_sizes,
                        const BigInt& y_size) {
  if (x_size < 1 || y_size < 1) {
    throw ValidationError("cardinality bound needs sizes >= 1");
  }
  BigInt product = x_size;
  for (const auto& u : prior_u_sizes) {
    if (u < 1) throw ValidationError("cardinality bound needs sizes >= 1");
    product *= u;
  }
  return product * (y_size - 1) + 1;
}

std::uint64_t CardinalityBound(std::uint64_t x_size,
                               const std::vector<std::uint64_t>& prior_u_sizes,
                               std::uint64_t y_size) {
  std::vector<BigInt> prior(prior_u_sizes.begin(), prior_u_sizes.end());
  const BigInt b = CardinalityBound(BigInt(x_size), prior, BigInt(y_size));
  if (b > std::numeric_limits<std::uint64_t>::max()) {
    throw ResourceLimitExceeded("cardinality bound overflows 64 bits");
  }
  return b.convert_to<std::uint64_t>();
}

std::string DumpMechanism(const FrlMechanism& m) {
  std::ostringstream out;
  const auto& vars = m.joint.variables();
  out << "atoms " << m.atoms.size() << '\n';
  for (std::size_t u = 0; u < m.atoms.size(); ++u) {
    out << "  " << vars[0].name << '=' << u << "  [" << ToString(m.atoms[u].begin)
        << ", " << ToString(m.atoms[u].end) << ")  P=" << ToString(m.p_u[u])
        << '\n';
  }
  out << "H(" << vars[0].name << ") = " << MechanismEntropy(m) << " bits\n";
  out << "g: " << vars[2].name << " = g(" << vars[0].name << ", "
      << vars[1].name << ")\n";
  for (std::size_t u = 0; u < m.g.size(); ++u) {
    out << "  " << vars[0].name << '=' << u << ':';
    for (std::size_t x = 0; x < m.g[u].size(); ++x) {
      out << ' ';
      if (m.g[u][x]) {
        out << *m.g[u][x];
      } else {
        out << '-';
      }
    }
    out << '\n';
  }
  for (const auto& w : m.warnings) out << "warning: " << w << '\n';
  return out.str();
}

}  // namespace pvlc
