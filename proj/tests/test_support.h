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

// Test-side oracles and instance generators. Nothing here calls into the
// construction code under test except for the distribution container.

#ifndef PVLC_TESTS_TEST_SUPPORT_H_
#define PVLC_TESTS_TEST_SUPPORT_H_

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pvlc/joint_dist.h"
#include "pvlc/rational.h"

namespace pvlc::testing {

// Random joint over `vars` with small integer weights. Every symbol of the
// first variable keeps positive mass.
inline JointDist RandomJoint(std::mt19937_64& rng,
                             const std::vector<Alphabet>& vars,
                             int max_weight = 4) {
  std::vector<Outcome> cells{{}};
  for (const auto& v : vars) {
    std::vector<Outcome> next;
    for (const auto& c : cells) {
      for (Symbol s = 0; s < v.size; ++s) {
        auto o = c;
        o.push_back(s);
        next.push_back(o);
      }
    }
    cells = std::move(next);
  }
  std::uniform_int_distribution<int> weight(0, max_weight);
  std::vector<int> w(cells.size());
  for (auto& x : w) x = weight(rng);
  // Force one positive cell per first-variable symbol.
  const std::size_t stride = cells.size() / vars[0].size;
  for (std::size_t x = 0; x < vars[0].size; ++x) {
    auto& cell = w[x * stride + rng() % stride];
    cell = std::max(cell, 1);
  }
  std::int64_t total = 0;
  for (int x : w) total += x;
  JointDist::Table table;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (w[i] > 0) table[cells[i]] = MakeRational(w[i], total);
  }
  return JointDist::Create(vars, std::move(table));
}

// P(U, X, Y) for the canonical interval construction, computed by
// intersecting every atom with every (x, y) segment. Input is (X, Y).
inline JointDist IntervalOracle(const JointDist& pxy) {
  const auto& xa = pxy.variables()[0];
  const auto& ya = pxy.variables()[1];
  std::vector<Rational> px(xa.size, Rational(0));
  std::vector<std::vector<Rational>> pyx(xa.size,
                                         std::vector<Rational>(ya.size));
  for (const auto& [o, p] : pxy.table()) {
    px[o[0]] += p;
    pyx[o[0]][o[1]] += p;
  }
  // Segment endpoints per x, ascending y.
  std::set<Rational> points{Rational(0), Rational(1)};
  std::vector<std::vector<std::pair<Rational, Rational>>> seg(xa.size);
  for (std::size_t x = 0; x < xa.size; ++x) {
    if (px[x] == 0) continue;
    Rational at = 0;
    seg[x].resize(ya.size);
    for (std::size_t y = 0; y < ya.size; ++y) {
      const Rational len = pyx[x][y] / px[x];
      seg[x][y] = {at, at + len};
      at += len;
      points.insert(at);
    }
  }
  const std::vector<Rational> pts(points.begin(), points.end());
  const std::size_t atoms = pts.size() - 1;
  JointDist::Table table;
  for (std::size_t u = 0; u < atoms; ++u) {
    for (std::size_t x = 0; x < xa.size; ++x) {
      if (px[x] == 0) continue;
      for (std::size_t y = 0; y < ya.size; ++y) {
        const auto& [a, b] = seg[x][y];
        const Rational lo = std::max(a, pts[u]);
        const Rational hi = std::min(b, pts[u + 1]);
        if (hi > lo) {
          table[{static_cast<Symbol>(u), static_cast<Symbol>(x),
                 static_cast<Symbol>(y)}] += px[x] * (hi - lo);
        }
      }
    }
  }
  return JointDist::Create({{"U", atoms}, xa, ya}, std::move(table));
}

inline double BinaryEntropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

}  // namespace pvlc::testing

#endif  // PVLC_TESTS_TEST_SUPPORT_H_
