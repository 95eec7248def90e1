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
#include "pvlc/pipeline.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "pvlc/information.h"

namespace pvlc {
namespace {

void CheckKey(const PadKey& key, const Scheme& scheme) {
  if (key.modulus != scheme.key_size()) {
    throw ValidationError("key size " + std::to_string(key.modulus) +
                          " does not match |X| = " +
                          std::to_string(scheme.key_size()));
  }
}

Transcript RunEncoder(const std::shared_ptr<Scheme>& scheme,
                      const JointDist& p, const Outcome& realization,
                      const DemandVector& demands, const PadKey& key,
                      CouplingSource& draws) {
  SequentialEncoder encoder(scheme);
  const auto& x_var = scheme->chain().private_var();
  Transcript t;
  t.slots.push_back(
      {SlotLabel(0), encoder.Begin(realization[p.IndexOf(x_var)], key)});
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const std::string target = FileVar(demands.files[i]);
    t.slots.push_back({SlotLabel(i + 1),
                       encoder.Next(target, realization[p.IndexOf(target)],
                                    draws)});
  }
  return t;
}

void CheckStateCount(std::uint64_t count, std::uint64_t limit) {
  if (count > limit) {
    throw ResourceLimitExceeded("enumeration exceeds the limit of " +
                                std::to_string(limit) + " states");
  }
}

TranscriptDistribution Assemble(
    const std::map<std::string, std::size_t>& lengths_by_transcript,
    const std::map<std::tuple<std::string, Symbol, Symbol>, Rational>& mass,
    const Alphabet& x_alphabet, std::uint32_t key_size) {
  TranscriptDistribution td;
  std::map<std::string, Symbol> index;
  for (const auto& [t, len] : lengths_by_transcript) {
    index.emplace(t, static_cast<Symbol>(td.transcripts.size()));
    td.transcripts.push_back(t);
    td.lengths.push_back(len);
  }
  JointDist::Table table;
  for (const auto& [key, p] : mass) {
    const auto& [t, x, w] = key;
    table[{index.at(t), x, w}] += p;
  }
  td.joint = JointDist::Create(
      {{"C", td.transcripts.size()}, x_alphabet, {"W", key_size}},
      std::move(table));
  return td;
}

}  // namespace

std::string FileVar(std::size_t n) { return "Y" + std::to_string(n); }

std::size_t CountFiles(const JointDist& p) {
  std::size_t n = 0;
  while (p.Has(FileVar(n + 1))) ++n;
  return n;
}

void ValidateDemands(const DemandVector& d, std::size_t num_files) {
  if (d.files.empty()) throw ValidationError("demand vector is empty");
  if (d.files.size() > num_files) {
    throw ValidationError("more demands (" + std::to_string(d.files.size()) +
                          ") than files (" + std::to_string(num_files) + ")");
  }
  std::set<std::size_t> seen;
  for (auto f : d.files) {
    if (f < 1 || f > num_files) {
      throw ValidationError("demand " + std::to_string(f) +
                            " outside [1, " + std::to_string(num_files) + "]");
    }
    if (!seen.insert(f).second) {
      throw ValidationError("file " + std::to_string(f) +
                            " demanded twice; demands must be distinct");
    }
  }
}

VarList DemandTargets(const DemandVector& d) {
  VarList out;
  for (auto f : d.files) out.push_back(FileVar(f));
  return out;
}

DemandVector ParseDemands(const std::string& text) {
  DemandVector d;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const Rational v = ParseRational(item);
    if (denominator(v) != 1 || v < 1) {
      throw ValidationError("bad demand '" + item + "'");
    }
    d.files.push_back(numerator(v).convert_to<std::size_t>());
  }
  if (d.files.empty()) throw ValidationError("empty demand list");
  return d;
}

std::string FormatDemands(const DemandVector& d) {
  std::string out;
  for (std::size_t i = 0; i < d.files.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(d.files[i]);
  }
  return out;
}

Scheme::Scheme(SequentialChain chain, CodingMode mode)
    : chain_(std::move(chain)),
      mode_(mode),
      key_size_(static_cast<std::uint32_t>(
          chain_.joint().variable(chain_.private_var()).size)),
      pad_codebook_(FixedLengthCodebook(key_size_)) {}

Scheme Scheme::Start(const JointDist& base, CodingMode mode,
                     const std::string& private_var,
                     std::uint64_t state_limit) {
  return Scheme(SequentialChain::Start(base, private_var, state_limit), mode);
}

Scheme Scheme::Build(const JointDist& base, const VarList& targets,
                     CodingMode mode, const std::string& private_var,
                     std::uint64_t state_limit) {
  Scheme s = Start(base, mode, private_var, state_limit);
  for (const auto& t : targets) s.Extend(t);
  return s;
}

void Scheme::Extend(const std::string& target) {
  chain_ = FrlExtend(chain_, target);
  stage_codebooks_.push_back(
      MakeCodebook(mode_, chain_.stages().back().mechanism.p_u));
}

std::size_t SeededCoupling::Pick(std::span<const Rational> weights) {
  if (weights.empty()) throw ValidationError("nothing to pick from");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng_);
  double cum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cum += ToDouble(weights[i]);
    if (u < cum) return i;
  }
  return weights.size() - 1;
}

std::size_t OdometerCoupling::Pick(std::span<const Rational> weights) {
  if (weights.empty()) throw ValidationError("nothing to pick from");
  if (depth_ == digits_.size()) {
    digits_.push_back(0);
    arity_.push_back(weights.size());
  } else if (arity_[depth_] != weights.size()) {
    throw InvariantViolation("coupling path changed arity on replay");
  }
  const std::size_t d = digits_[depth_++];
  weight_ *= weights[d];
  return d;
}

bool OdometerCoupling::Advance() {
  digits_.resize(depth_);
  arity_.resize(depth_);
  depth_ = 0;
  weight_ = 1;
  while (!digits_.empty()) {
    if (digits_.back() + 1 < arity_.back()) {
      ++digits_.back();
      return true;
    }
    digits_.pop_back();
    arity_.pop_back();
  }
  return false;
}

SequentialEncoder::SequentialEncoder(std::shared_ptr<Scheme> scheme)
    : scheme_(std::move(scheme)) {}

Bitstring SequentialEncoder::Begin(Symbol x, const PadKey& key) {
  if (x_) throw ValidationError("encoder already started");
  CheckKey(key, *scheme_);
  x_ = x;
  return scheme_->pad_codebook().Encode(OtpEncrypt(x, key).value);
}

Bitstring SequentialEncoder::Next(const std::string& target, Symbol value,
                                  CouplingSource& draws) {
  if (!x_) throw ValidationError("Begin must precede Next");
  const std::size_t i = public_cache_.size();
  if (i < scheme_->size()) {
    if (scheme_->chain().stages()[i].target != target) {
      throw ValidationError("scheme stage " + std::to_string(i + 1) +
                            " was built for " +
                            scheme_->chain().stages()[i].target + ", not " +
                            target);
    }
  } else {
    scheme_->Extend(target);
  }
  const auto& stage = scheme_->chain().stages()[i];
  Outcome key{*x_};
  for (std::size_t j = 0; j < i; ++j) {
    key.push_back(scheme_->stage_codebook(j).DecodeExact(public_cache_[j]));
  }
  const auto candidates =
      stage.mechanism.Candidates(stage.CompoundSymbol(key), value);
  if (candidates.empty()) {
    throw ValidationError("value " + std::to_string(value) + " of " + target +
                          " has zero probability given the private symbol");
  }
  std::vector<Rational> weights;
  for (const auto& c : candidates) weights.push_back(c.second);
  const Symbol u = candidates.at(draws.Pick(weights)).first;
  Bitstring bits = scheme_->stage_codebook(i).Encode(u);
  public_cache_.push_back(bits);
  return bits;
}

Transcript EncodeSession(const JointDist& p, const Outcome& realization,
                         const DemandVector& demands, const PadKey& key,
                         const Scheme& scheme, CouplingSource& draws) {
  ValidateDemands(demands, CountFiles(p));
  if (realization.size() != p.arity() || p.Probability(realization) == 0) {
    throw ValidationError("realization outside the support of the database");
  }
  return RunEncoder(std::make_shared<Scheme>(scheme), p, realization, demands,
                    key, draws);
}

DecodedSession DecodeSession(const Transcript& t, const PadKey& key,
                             const DemandVector& demands,
                             const Scheme& scheme) {
  CheckKey(key, scheme);
  if (t.slots.size() != demands.size() + 1) {
    throw ValidationError("transcript has " + std::to_string(t.slots.size()) +
                          " slots, expected " +
                          std::to_string(demands.size() + 1));
  }
  if (scheme.size() < demands.size()) {
    throw ValidationError("scheme has fewer stages than demands");
  }
  DecodedSession out;
  const Symbol padded = scheme.pad_codebook().DecodeExact(t.slots[0].bits);
  out.x = OtpDecrypt({padded, key.modulus}, key);
  Outcome key_tuple{out.x};
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const auto& stage = scheme.chain().stages()[i];
    if (stage.target != FileVar(demands.files[i])) {
      throw ValidationError("scheme does not match the demand vector");
    }
    const Symbol u = scheme.stage_codebook(i).DecodeExact(t.slots[i + 1].bits);
    out.files.push_back(
        stage.mechanism.Decode(u, stage.CompoundSymbol(key_tuple)));
    key_tuple.push_back(u);
  }
  return out;
}

void ForEachOutcome(const JointDist& p, const DemandVector& demands,
                    const Scheme& scheme, std::uint64_t state_limit,
                    const std::function<void(const SessionOutcome&)>& visit) {
  ValidateDemands(demands, CountFiles(p));
  const auto shared = std::make_shared<Scheme>(scheme);
  const std::uint32_t T = scheme.key_size();
  const Rational key_mass = MakeRational(1, T);
  const std::size_t xi = p.IndexOf(scheme.chain().private_var());
  std::uint64_t count = 0;
  for (const auto& [realization, mass] : p.table()) {
    for (Symbol w = 0; w < T; ++w) {
      const PadKey key{w, T};
      OdometerCoupling odometer;
      do {
        CheckStateCount(++count, state_limit);
        const Transcript t =
            RunEncoder(shared, p, realization, demands, key, odometer);
        visit({&realization, realization[xi], key, &t,
               mass * key_mass * odometer.weight()});
      } while (odometer.Advance());
    }
  }
}

TranscriptDistribution BuildTranscriptDistribution(
    const JointDist& p, const DemandVector& demands, const Scheme& scheme,
    std::uint64_t state_limit) {
  std::map<std::string, std::size_t> lengths;
  std::map<std::tuple<std::string, Symbol, Symbol>, Rational> mass;
  ForEachOutcome(p, demands, scheme, state_limit,
                 [&](const SessionOutcome& o) {
                   const std::string key = o.transcript->ToDebugString();
                   lengths.emplace(key, o.transcript->total_length());
                   mass[{key, o.x, o.key.value}] += o.weight;
                 });
  return Assemble(lengths, mass,
                  p.variable(scheme.chain().private_var()), scheme.key_size());
}

TranscriptDistribution BuildUncodedBaseline(const JointDist& p,
                                            const DemandVector& demands,
                                            std::uint64_t state_limit) {
  ValidateDemands(demands, CountFiles(p));
  const auto& x_alphabet = p.variable("X");
  const auto T = static_cast<std::uint32_t>(x_alphabet.size);
  const std::size_t xi = p.IndexOf("X");
  std::map<std::string, std::size_t> lengths;
  std::map<std::tuple<std::string, Symbol, Symbol>, Rational> mass;
  CheckStateCount(p.support_size() * T, state_limit);
  for (const auto& [o, pr] : p.table()) {
    Transcript t;
    for (std::size_t i = 0; i < demands.size(); ++i) {
      const std::size_t fi = p.IndexOf(FileVar(demands.files[i]));
      t.slots.push_back(
          {SlotLabel(i + 1),
           Bitstring::FromUint(o[fi], CeilLog2(std::uint64_t{
                                          p.variables()[fi].size}))});
    }
    const std::string key = t.ToDebugString();
    lengths.emplace(key, t.total_length());
    for (Symbol w = 0; w < T; ++w) {
      mass[{key, o[xi], w}] += pr * MakeRational(1, T);
    }
  }
  return Assemble(lengths, mass, x_alphabet, T);
}

LeakageReport AuditLeakage(const TranscriptDistribution& td) {
  return {ExactIndependent(td.joint, {"C"}, {td.joint.variables()[1].name}),
          MutualInformation(td.joint, {"C"}, {td.joint.variables()[1].name})};
}

LengthReport ExpectedLength(const TranscriptDistribution& td) {
  const std::size_t T = td.joint.variable("W").size;
  std::vector<Rational> weighted(T, Rational(0));
  std::vector<Rational> mass(T, Rational(0));
  for (const auto& [o, p] : td.joint.table()) {
    weighted[o[2]] += p * static_cast<std::int64_t>(td.lengths[o[0]]);
    mass[o[2]] += p;
  }
  LengthReport r;
  for (std::size_t w = 0; w < T; ++w) {
    if (mass[w] == 0) {
      throw InvariantViolation("key value " + std::to_string(w) +
                               " has zero probability");
    }
    r.per_key.push_back(weighted[w] / mass[w]);
  }
  r.max = *std::max_element(r.per_key.begin(), r.per_key.end());
  r.equal_over_keys =
      std::all_of(r.per_key.begin(), r.per_key.end(),
                  [&](const Rational& v) { return v == r.per_key.front(); });
  return r;
}

LosslessReport VerifyLossless(const JointDist& p, const DemandVector& demands,
                              const Scheme& scheme,
                              std::uint64_t state_limit) {
  LosslessReport report;
  std::vector<std::size_t> file_index;
  for (auto f : demands.files) file_index.push_back(p.IndexOf(FileVar(f)));
  ForEachOutcome(p, demands, scheme, state_limit,
                 [&](const SessionOutcome& o) {
                   ++report.outcomes;
                   try {
                     const auto decoded =
                         DecodeSession(*o.transcript, o.key, demands, scheme);
                     bool ok = decoded.x == o.x;
                     for (std::size_t i = 0; i < file_index.size(); ++i) {
                       ok = ok &&
                            decoded.files[i] == (*o.realization)[file_index[i]];
                     }
                     if (!ok) ++report.failures;
                   } catch (const ValidationError&) {
                     ++report.failures;
                   }
                 });
  return report;
}

BoundReport SessionBounds(const JointDist& p, const DemandVector& demands,
                          const Scheme& scheme,
                          const std::optional<Rational>& measured) {
  const VarList targets = DemandTargets(demands);
  const auto& x = scheme.chain().private_var();
  std::vector<BigInt> sizes;
  for (const auto& t : targets) sizes.emplace_back(p.variable(t).size);
  BoundReport r;
  r.upper_cardinality = UpperBoundCardinality(BigInt(p.variable(x).size), sizes);
  r.upper_entropy_estimate = UpperBoundEntropyEstimate(scheme.chain()).bits;
  r.lower = LowerBound(p, targets, x);
  if (measured) r.measured = ToDouble(*measured);
  return r;
}

namespace {

void Permutations(std::size_t n, std::size_t k, std::vector<std::size_t>& cur,
                  std::vector<bool>& used, std::vector<DemandVector>& out) {
  if (cur.size() == k) {
    out.push_back({cur});
    return;
  }
  for (std::size_t f = 1; f <= n; ++f) {
    if (used[f]) continue;
    used[f] = true;
    cur.push_back(f);
    Permutations(n, k, cur, used, out);
    cur.pop_back();
    used[f] = false;
  }
}

}  // namespace

SweepResult WorstCaseSweep(const JointDist& p, std::size_t K, CodingMode mode,
                           std::uint64_t state_limit) {
  const std::size_t N = CountFiles(p);
  if (K < 1 || K > N) {
    throw ValidationError("sweep needs 1 <= K <= N = " + std::to_string(N));
  }
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < K; ++i) {
    count *= N - i;
    CheckStateCount(count, state_limit);
  }
  std::vector<DemandVector> demand_sets;
  std::vector<std::size_t> cur;
  std::vector<bool> used(N + 1, false);
  Permutations(N, K, cur, used, demand_sets);

  SweepResult result;
  for (const auto& d : demand_sets) {
    const VarList targets = DemandTargets(d);
    const Scheme scheme = Scheme::Build(p, targets, mode, "X", state_limit);
    const auto td = BuildTranscriptDistribution(p, d, scheme, state_limit);
    SweepRow row;
    row.demands = d;
    row.expected_length = ExpectedLength(td).max;
    row.leakage_zero = AuditLeakage(td).exact_zero;
    row.lossless = VerifyLossless(p, d, scheme, state_limit).ok();
    row.bounds = SessionBounds(p, d, scheme, row.expected_length);
    result.rows.push_back(std::move(row));
    if (result.rows.back().expected_length >
        result.rows[result.worst].expected_length) {
      result.worst = result.rows.size() - 1;
    }
  }
  return result;
}

}  // namespace pvlc
