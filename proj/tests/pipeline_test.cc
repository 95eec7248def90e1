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

#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "pvlc/bounds.h"
#include "pvlc/errors.h"
#include "pvlc/information.h"
#include "pvlc/pipeline.h"
#include "test_support.h"

namespace pvlc {
namespace {

using ::pvlc::testing::BinaryEntropy;
using ::pvlc::testing::RandomJoint;

Rational R(std::int64_t n, std::int64_t d = 1) { return MakeRational(n, d); }

JointDist TwoByTwo() {
  return JointDist::Create({{"X", 2}, {"Y1", 2}}, {{{0, 0}, R(1, 4)},
                                                  {{0, 1}, R(1, 4)},
                                                  {{1, 0}, R(1, 8)},
                                                  {{1, 1}, R(3, 8)}});
}

JointDist Deterministic() {
  return JointDist::Create({{"X", 3}, {"Y1", 2}}, {{{0, 1}, R(1, 2)},
                                                  {{1, 0}, R(1, 4)},
                                                  {{2, 1}, R(1, 4)}});
}

JointDist Example1(Rational p, std::size_t N, std::size_t F) {
  return Example1Build({.p = p, .N = N, .K = 1, .F = F});
}

// Always picks index `k` (clamped).
class FixedPick : public CouplingSource {
 public:
  explicit FixedPick(std::size_t k) : k_(k) {}
  std::size_t Pick(std::span<const Rational> w) override {
    return std::min(k_, w.size() - 1);
  }

 private:
  std::size_t k_;
};

TEST(DemandTest, ParseValidateFormat) {
  EXPECT_EQ(ParseDemands("2,1,3").files, (std::vector<std::size_t>{2, 1, 3}));
  EXPECT_EQ(FormatDemands({{2, 1}}), "2,1");
  EXPECT_THROW(ParseDemands("1,,2"), ValidationError);
  EXPECT_THROW(ParseDemands(""), ValidationError);
  EXPECT_THROW(ValidateDemands({{1, 1}}, 2), ValidationError);
  EXPECT_THROW(ValidateDemands({{3}}, 2), ValidationError);
  EXPECT_THROW(ValidateDemands({{0}}, 2), ValidationError);
  EXPECT_THROW(ValidateDemands({{1, 2, 3}}, 2), ValidationError);
  EXPECT_NO_THROW(ValidateDemands({{2, 1}}, 2));
  EXPECT_EQ(CountFiles(Example1(R(1, 2), 3, 1)), 3u);
  EXPECT_EQ(DemandTargets({{2, 1}}), (VarList{"Y2", "Y1"}));
}

TEST(EncodeSessionTest, DeterministicTargetIsPadOnly) {
  const auto p = Deterministic();
  const auto scheme = Scheme::Build(p, {"Y1"}, CodingMode::kFixedLength);
  SeededCoupling draws(1);
  const auto t = EncodeSession(p, {1, 0}, {{1}}, {2, 3}, scheme, draws);
  ASSERT_EQ(t.slots.size(), 2u);
  EXPECT_EQ(t.slots[0].bits.size(), 2u);
  EXPECT_EQ(t.slots[1].bits.size(), 0u);
  EXPECT_EQ(t.total_length(), 2u);
  const auto out = DecodeSession(t, {2, 3}, {{1}}, scheme);
  EXPECT_EQ(out.x, 1u);
  EXPECT_EQ(out.files, (std::vector<Symbol>{0}));
}

TEST(EncodeSessionTest, TwoByTwoBothAtomChoicesDecode) {
  const auto p = TwoByTwo();
  const auto scheme = Scheme::Build(p, {"Y1"}, CodingMode::kFixedLength);
  const auto cand = scheme.chain().stages()[0].mechanism.Candidates(0, 0);
  ASSERT_EQ(cand.size(), 2u);
  EXPECT_EQ(cand[0].second, R(1, 2));
  EXPECT_EQ(cand[1].second, R(1, 2));
  std::set<std::string> slots;
  for (std::size_t k = 0; k < 2; ++k) {
    FixedPick draws(k);
    const auto t = EncodeSession(p, {0, 0}, {{1}}, {1, 2}, scheme, draws);
    slots.insert(t.slots[1].bits.ToString());
    const auto out = DecodeSession(t, {1, 2}, {{1}}, scheme);
    EXPECT_EQ(out.x, 0u);
    EXPECT_EQ(out.files[0], 0u);
  }
  EXPECT_EQ(slots.size(), 2u);
}

TEST(EncodeSessionTest, Errors) {
  const auto p = Example1(R(1, 2), 2, 1);
  const auto scheme = Scheme::Build(p, {"Y1", "Y2"}, CodingMode::kFixedLength);
  SeededCoupling draws(3);
  EXPECT_THROW(EncodeSession(p, {0, 0, 0}, {{1, 1}}, {0, 2}, scheme, draws),
               ValidationError);
  EXPECT_THROW(EncodeSession(p, {0, 1, 0}, {{1, 2}}, {0, 2}, scheme, draws),
               ValidationError);
  EXPECT_THROW(EncodeSession(p, {0, 0, 0}, {{1, 2}}, {0, 3}, scheme, draws),
               ValidationError);
  EXPECT_THROW(EncodeSession(p, {0, 0, 0}, {{2, 1}}, {0, 2}, scheme, draws),
               ValidationError);
}

TEST(DecodeSessionTest, CorruptedTranscriptFails) {
  const auto p = TwoByTwo();
  const auto scheme = Scheme::Build(p, {"Y1"}, CodingMode::kFixedLength);
  SeededCoupling draws(5);
  auto t = EncodeSession(p, {1, 1}, {{1}}, {0, 2}, scheme, draws);
  auto extra = t;
  extra.slots[1].bits.push_back(true);
  EXPECT_THROW(DecodeSession(extra, {0, 2}, {{1}}, scheme), ValidationError);
  auto missing = t;
  missing.slots.pop_back();
  EXPECT_THROW(DecodeSession(missing, {0, 2}, {{1}}, scheme), ValidationError);
  // Three atoms in a two-bit fixed code leave one word unused.
  Transcript unused = t;
  unused.slots[1].bits = Bitstring::FromString("11");
  EXPECT_THROW(DecodeSession(unused, {0, 2}, {{1}}, scheme), ValidationError);
}

TEST(DecodeSessionTest, WrongKeyShiftsX) {
  const auto p = TwoByTwo();
  const auto scheme = Scheme::Build(p, {"Y1"}, CodingMode::kFixedLength);
  SeededCoupling draws(6);
  const auto t = EncodeSession(p, {0, 1}, {{1}}, {0, 2}, scheme, draws);
  EXPECT_EQ(DecodeSession(t, {0, 2}, {{1}}, scheme).x, 0u);
  EXPECT_EQ(DecodeSession(t, {1, 2}, {{1}}, scheme).x, 1u);
}

TEST(EncodeSessionTest, Example1ExhaustiveRoundTrip) {
  const auto p = Example1(R(1, 2), 2, 1);
  for (const DemandVector& d : {DemandVector{{1, 2}}, DemandVector{{2, 1}}}) {
    const auto scheme =
        Scheme::Build(p, DemandTargets(d), CodingMode::kFixedLength);
    std::uint64_t visited = 0;
    ForEachOutcome(p, d, scheme, kDefaultStateLimit,
                   [&](const SessionOutcome& o) {
                     ++visited;
                     const auto out =
                         DecodeSession(*o.transcript, o.key, d, scheme);
                     EXPECT_EQ(out.x, o.x);
                     for (std::size_t i = 0; i < d.size(); ++i) {
                       EXPECT_EQ(out.files[i],
                                 (*o.realization)[p.IndexOf(FileVar(
                                     d.files[i]))]);
                     }
                   });
    EXPECT_GT(visited, 0u);
    const auto report = VerifyLossless(p, d, scheme);
    EXPECT_TRUE(report.ok());
    EXPECT_EQ(report.outcomes, visited);
  }
}

TEST(ForEachOutcomeTest, WeightsSumToOne) {
  const auto p = Example1(R(1, 4), 2, 1);
  const DemandVector d{{2, 1}};
  const auto scheme = Scheme::Build(p, DemandTargets(d), CodingMode::kEntropy);
  Rational total = 0;
  ForEachOutcome(p, d, scheme, kDefaultStateLimit,
                 [&](const SessionOutcome& o) { total += o.weight; });
  EXPECT_EQ(total, 1);
  EXPECT_THROW(ForEachOutcome(p, d, scheme, 3, [](const SessionOutcome&) {}),
               ResourceLimitExceeded);
}

TEST(TranscriptDistributionTest, IndependentTargetIsProductOfPadAndCode) {
  const auto p = JointDist::Create({{"X", 2}, {"Y1", 2}}, {{{0, 0}, R(1, 6)},
                                                          {{0, 1}, R(1, 2)},
                                                          {{1, 0}, R(1, 12)},
                                                          {{1, 1}, R(1, 4)}});
  const DemandVector d{{1}};
  const auto scheme = Scheme::Build(p, {"Y1"}, CodingMode::kFixedLength);
  EXPECT_EQ(scheme.chain().stages()[0].mechanism.size(), 2u);
  const auto td = BuildTranscriptDistribution(p, d, scheme);
  // C = (pad code, U code) with U = Y: P(C) = 1/2 * P(Y).
  EXPECT_EQ(td.transcripts.size(), 4u);
  for (std::size_t c = 0; c < td.transcripts.size(); ++c) {
    const auto& s = td.transcripts[c];
    const Rational py = s.back() == '0' ? R(1, 4) : R(3, 4);
    EXPECT_EQ(Marginalize(td.joint, {"C"}).Probability({Symbol(c)}),
              py * R(1, 2));
  }
  EXPECT_TRUE(AuditLeakage(td).exact_zero);
}

TEST(TranscriptDistributionTest, TwoByTwoTableAndAudit) {
  const auto p = TwoByTwo();
  const DemandVector d{{1}};
  const auto scheme = Scheme::Build(p, {"Y1"}, CodingMode::kFixedLength);
  const auto td = BuildTranscriptDistribution(p, d, scheme);
  EXPECT_LE(td.joint.support_size(), 2u * 2 * 3 * 2);
  Rational total = 0;
  for (const auto& [o, w] : td.joint.table()) total += w;
  EXPECT_EQ(total, 1);
  const auto leak = AuditLeakage(td);
  EXPECT_TRUE(leak.exact_zero);
  EXPECT_EQ(leak.bits, 0.0);
  EXPECT_TRUE(ExactIndependent(td.joint, {"C"}, {"X"}));
}

TEST(LeakageAuditTest, Example1SchemeIsExactlyPrivate) {
  for (auto p : {R(1, 4), R(1, 2)}) {
    const auto base = Example1(p, 2, 1);
    const DemandVector d{{1, 2}};
    for (auto mode : {CodingMode::kFixedLength, CodingMode::kEntropy}) {
      const auto scheme = Scheme::Build(base, DemandTargets(d), mode);
      const auto leak =
          AuditLeakage(BuildTranscriptDistribution(base, d, scheme));
      EXPECT_TRUE(leak.exact_zero);
      EXPECT_EQ(leak.bits, 0.0);
    }
  }
}

TEST(LeakageAuditTest, UncodedBaselineLeaks) {
  const auto base = Example1(R(1, 2), 1, 1);
  const auto leak = AuditLeakage(BuildUncodedBaseline(base, {{1}}));
  EXPECT_FALSE(leak.exact_zero);
  EXPECT_NEAR(leak.bits, BinaryEntropy(0.25) - 0.5, 1e-12);
}

TEST(LeakageAuditTest, PadOnlyTranscriptIsPrivate) {
  const auto p = Deterministic();
  const auto scheme = Scheme::Build(p, {"Y1"}, CodingMode::kFixedLength);
  const auto td = BuildTranscriptDistribution(p, {{1}}, scheme);
  EXPECT_EQ(td.transcripts.size(), 3u);
  EXPECT_TRUE(AuditLeakage(td).exact_zero);
}

// The pad slot is independent of the whole U chain.
TEST(LeakageAuditTest, PadIndependentOfUChain) {
  const auto base = Example1(R(1, 4), 2, 1);
  const DemandVector d{{1, 2}};
  const auto scheme = Scheme::Build(base, DemandTargets(d),
                                    CodingMode::kFixedLength);
  JointDist::Table table;
  std::map<std::string, Symbol> us;
  ForEachOutcome(base, d, scheme, kDefaultStateLimit,
                 [&](const SessionOutcome& o) {
                   const auto& t = *o.transcript;
                   const auto pad = scheme.pad_codebook().DecodeExact(
                       t.slots[0].bits);
                   std::string rest;
                   for (std::size_t i = 1; i < t.slots.size(); ++i) {
                     rest += t.slots[i].bits.ToString() + "|";
                   }
                   const auto [it, _] =
                       us.emplace(rest, static_cast<Symbol>(us.size()));
                   table[{pad, it->second}] += o.weight;
                 });
  const auto joint =
      JointDist::Create({{"Xt", 2}, {"Us", us.size()}}, std::move(table));
  EXPECT_TRUE(ExactIndependent(joint, {"Xt"}, {"Us"}));
}

TEST(ExpectedLengthTest, FixedModeIsConstant) {
  const auto base = Example1(R(1, 2), 2, 1);
  const DemandVector d{{1, 2}};
  const auto scheme = Scheme::Build(base, DemandTargets(d),
                                    CodingMode::kFixedLength);
  const auto td = BuildTranscriptDistribution(base, d, scheme);
  const std::size_t expect =
      CeilLog2(std::uint64_t{2}) +
      CeilLog2(std::uint64_t{scheme.chain().stages()[0].mechanism.size()}) +
      CeilLog2(std::uint64_t{scheme.chain().stages()[1].mechanism.size()});
  for (auto len : td.lengths) EXPECT_EQ(len, expect);
  const auto r = ExpectedLength(td);
  EXPECT_TRUE(r.equal_over_keys);
  EXPECT_EQ(r.per_key.size(), 2u);
  EXPECT_EQ(r.max, R(static_cast<std::int64_t>(expect)));
}

TEST(ExpectedLengthTest, EntropyModeOnTwoByTwo) {
  const auto p = TwoByTwo();
  const auto scheme = Scheme::Build(p, {"Y1"}, CodingMode::kEntropy);
  const auto r = ExpectedLength(BuildTranscriptDistribution(p, {{1}}, scheme));
  EXPECT_EQ(r.max, R(5, 2));
  EXPECT_TRUE(r.equal_over_keys);
  for (const auto& v : r.per_key) EXPECT_EQ(v, R(5, 2));
}

TEST(ExpectedLengthTest, DeterministicCaseIsPadLength) {
  const auto p = Deterministic();
  const auto scheme = Scheme::Build(p, {"Y1"}, CodingMode::kEntropy);
  EXPECT_EQ(ExpectedLength(BuildTranscriptDistribution(p, {{1}}, scheme)).max,
            R(2));
}

TEST(WorstCaseSweepTest, RowCounts) {
  EXPECT_EQ(WorstCaseSweep(Example1(R(1, 2), 1, 1), 1,
                           CodingMode::kFixedLength)
                .rows.size(),
            1u);
  const auto two =
      WorstCaseSweep(Example1(R(1, 2), 2, 1), 2, CodingMode::kFixedLength);
  ASSERT_EQ(two.rows.size(), 2u);
  EXPECT_EQ(two.rows[0].demands, (DemandVector{{1, 2}}));
  EXPECT_EQ(two.rows[1].demands, (DemandVector{{2, 1}}));
  for (const auto& row : two.rows) {
    EXPECT_TRUE(row.leakage_zero);
    EXPECT_TRUE(row.lossless);
    EXPECT_TRUE(row.bounds.SandwichHolds());
  }
  EXPECT_THROW(WorstCaseSweep(Example1(R(1, 2), 2, 1), 3,
                              CodingMode::kFixedLength),
               ValidationError);
}

TEST(WorstCaseSweepTest, SymmetricFilesGiveEqualRows) {
  const auto r =
      WorstCaseSweep(Example1(R(1, 3), 3, 1), 2, CodingMode::kEntropy);
  ASSERT_EQ(r.rows.size(), 6u);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.expected_length, r.rows[0].expected_length);
  }
}

// Slot i must not depend on demands after i.
TEST(SequentialityTest, FutureDemandsNeverChangeEarlierSlots) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const auto base = RandomJoint(rng, {{"X", 2}, {"Y1", 2}, {"Y2", 2},
                                        {"Y3", 2}}, 2);
    std::vector<std::size_t> files{1, 2, 3};
    std::shuffle(files.begin(), files.end(), rng);
    const std::size_t keep = 1 + rng() % 2;
    DemandVector a{files};
    DemandVector b{files};
    std::swap(b.files[keep], b.files[2]);
    if (keep == 2) b.files.resize(2);
    const auto it = std::next(base.table().begin(),
                              static_cast<long>(rng() % base.support_size()));
    const Outcome& real = it->first;
    const PadKey key{static_cast<Symbol>(rng() % 2), 2};
    const std::uint64_t seed = rng();
    const auto sa = Scheme::Build(base, DemandTargets(a), CodingMode::kEntropy);
    const auto sb = Scheme::Build(base, DemandTargets(b), CodingMode::kEntropy);
    SeededCoupling da(seed), db(seed);
    const auto ta = EncodeSession(base, real, a, key, sa, da);
    const auto tb = EncodeSession(base, real, b, key, sb, db);
    for (std::size_t i = 0; i <= keep; ++i) {
      EXPECT_EQ(ta.slots[i], tb.slots[i]) << "trial " << trial << " slot " << i;
    }
  }
}

TEST(SequentialEncoderTest, ExtendsSharedSchemeOnDemand) {
  const auto base = Example1(R(1, 2), 3, 1);
  auto scheme = std::make_shared<Scheme>(
      Scheme::Start(base, CodingMode::kFixedLength));
  SequentialEncoder enc(scheme);
  SeededCoupling draws(9);
  EXPECT_THROW(enc.Next("Y1", 0, draws), ValidationError);
  enc.Begin(1, {0, 2});
  EXPECT_THROW(enc.Begin(1, {0, 2}), ValidationError);
  enc.Next("Y3", 1, draws);
  EXPECT_EQ(scheme->size(), 1u);
  enc.Next("Y1", 0, draws);
  EXPECT_EQ(scheme->size(), 2u);
  EXPECT_EQ(enc.public_cache().size(), 2u);
  SequentialEncoder other(scheme);
  other.Begin(0, {1, 2});
  EXPECT_THROW(other.Next("Y2", 0, draws), ValidationError);
}

}  // namespace
}  // namespace pvlc
