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
#include "pvlc/rational.h"

#include <cctype>
#include <cmath>

#include "pvlc/errors.h"

namespace pvlc {
namespace {

BigInt ParseInteger(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) {
    throw ValidationError("malformed rational '" + std::string(whole) + "'");
  }
  BigInt value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw ValidationError("malformed rational '" + std::string(whole) +
                            "'");
    }
    value = value * 10 + (text[i] - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational MakeRational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  if (den < 0) return MakeRational(BigInt(-num), BigInt(-den));
  return Rational(num, den);
}

Rational MakeRational(std::int64_t num, std::int64_t den) {
  return MakeRational(BigInt(num), BigInt(den));
}

Rational ParseRational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(ParseInteger(text, text));
  }
  const BigInt den = ParseInteger(text.substr(slash + 1), text);
  if (den <= 0) {
    throw ValidationError("denominator must be positive in '" +
                          std::string(text) + "'");
  }
  return MakeRational(ParseInteger(text.substr(0, slash), text), den);
}

std::string ToString(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double ToDouble(const Rational& r) { return r.convert_to<double>(); }

std::uint64_t CeilLog2(const BigInt& n) {
  if (n < 1) throw ValidationError("CeilLog2 requires n >= 1");
  if (n == 1) return 0;
  return static_cast<std::uint64_t>(boost::multiprecision::msb(BigInt(n - 1))) +
         1;
}

std::uint64_t CeilBits(double bits, double slack) {
  if (bits <= slack) return 0;
  return static_cast<std::uint64_t>(std::ceil(bits - slack));
}

}  // namespace pvlc
