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

#ifndef PVLC_INFORMATION_H_
#define PVLC_INFORMATION_H_

#include "pvlc/joint_dist.h"

namespace pvlc {

// All functionals are in bits. Probabilities stay exact; only the log
// evaluation is floating point.

double Entropy(const JointDist& d);
double Entropy(const std::vector<Rational>& marginal);

// Entropy of a subset of variables.
double Entropy(const JointDist& d, const VarList& vars);

// Sum over g of P(g) H(target | given = g). `given` may be empty.
double ConditionalEntropy(const JointDist& d, const VarList& target,
                          const VarList& given);

// Sum of p(a,b) log2(p(a,b) / p(a)p(b)); the ratio is formed exactly, so
// independent tables give exactly 0.0.
double MutualInformation(const JointDist& d, const VarList& a,
                         const VarList& b);

// True iff P(a,b) == P(a)P(b) for every cell, as rational equality.
bool ExactIndependent(const JointDist& d, const VarList& a, const VarList& b);

// True iff every positive-mass value of `given` pins down one value of
// `target`. Equivalent to ConditionalEntropy(...) == 0.
bool IsFunctionOf(const JointDist& d, const VarList& target,
                  const VarList& given);

}  // namespace pvlc

#endif  // PVLC_INFORMATION_H_
