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

#ifndef PVLC_RATIONAL_H_
#define PVLC_RATIONAL_H_

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace pvlc {

using BigInt = boost::multiprecision::cpp_int;

// Always reduced with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

// Throws ValidationError when den == 0.
Rational MakeRational(std::int64_t num, std::int64_t den);
Rational MakeRational(const BigInt& num, const BigInt& den);

// Accepts "n", "n/d" with optional sign on n. Throws ValidationError.
Rational ParseRational(std::string_view text);

std::string ToString(const Rational& r);
double ToDouble(const Rational& r);

// Smallest b with 2^b >= n. Requires n >= 1.
std::uint64_t CeilLog2(const BigInt& n);
inline std::uint64_t CeilLog2(std::uint64_t n) { return CeilLog2(BigInt(n)); }

// Ceiling of a nonnegative entropy value; absorbs float noise of `slack`
// around integers so that H = 2 computed as 2.0000000001 still maps to 2.
std::uint64_t CeilBits(double bits, double slack = 1e-9);

}  // namespace pvlc

#endif  // PVLC_RATIONAL_H_
