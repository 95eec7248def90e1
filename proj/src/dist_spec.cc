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
#include "pvlc/dist_spec.h"

#include <fstream>
#include <sstream>

#include "pvlc/errors.h"

namespace pvlc {
namespace {

std::string Where(std::size_t line) {
  return "line " + std::to_string(line) + ": ";
}

}  // namespace

JointDist ParseDistSpec(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<Alphabet> vars;
  JointDist::Table table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string head;
    if (!(fields >> head)) continue;
    if (head == "var") {
      if (!table.empty()) {
        throw ValidationError(Where(lineno) + "'var' after table entries");
      }
      Alphabet a;
      long long size = 0;
      if (!(fields >> a.name >> size) || size < 1) {
        throw ValidationError(Where(lineno) + "expected 'var NAME SIZE'");
      }
      a.size = static_cast<std::size_t>(size);
      vars.push_back(std::move(a));
      continue;
    }
    if (vars.empty()) {
      throw ValidationError(Where(lineno) + "table entry before any 'var'");
    }
    std::vector<std::string> tokens{head};
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.size() != vars.size() + 1) {
      throw ValidationError(Where(lineno) + "expected " +
                            std::to_string(vars.size()) +
                            " symbols and a probability");
    }
    Outcome outcome;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const Rational s = ParseRational(tokens[i]);
      if (denominator(s) != 1 || s < 0) {
        throw ValidationError(Where(lineno) + "bad symbol '" + tokens[i] +
                              "'");
      }
      outcome.push_back(numerator(s).convert_to<Symbol>());
    }
    if (table.count(outcome) != 0) {
      throw ValidationError(Where(lineno) + "duplicate outcome");
    }
    table.emplace(std::move(outcome), ParseRational(tokens.back()));
  }
  if (vars.empty()) throw ValidationError("no variables declared");
  return JointDist::Create(std::move(vars), std::move(table));
}

JointDist LoadDistSpec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open distribution spec '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseDistSpec(buf.str());
}

std::string FormatDistSpec(const JointDist& d) {
  std::ostringstream out;
  for (const auto& v : d.variables()) {
    out << "var " << v.name << ' ' << v.size << '\n';
  }
  for (const auto& [outcome, p] : d.table()) {
    for (auto s : outcome) out << s << ' ';
    out << ToString(p) << '\n';
  }
  return out.str();
}

}  // namespace pvlc
