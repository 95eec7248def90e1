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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "pvlc/bitstring.h"
#include "pvlc/codebook.h"
#include "pvlc/errors.h"
#include "pvlc/information.h"
#include "pvlc/one_time_pad.h"
#include "pvlc/transcript.h"

namespace pvlc {
namespace {

Rational R(std::int64_t n, std::int64_t d = 1) { return MakeRational(n, d); }

Bitstring B(std::string_view s) { return Bitstring::FromString(s); }

std::vector<Rational> RandomMarginal(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::int64_t> w(n);
  std::int64_t total = 0;
  for (auto& x : w) total += x = static_cast<std::int64_t>(rng() % 9);
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  std::vector<Rational> out;
  for (auto x : w) out.push_back(MakeRational(x, total));
  return out;
}

TEST(OneTimePadTest, Examples) {
  EXPECT_EQ(OtpEncrypt(0, {0, 4}).value, 0u);
  EXPECT_EQ(OtpEncrypt(2, {3, 4}).value, 1u);
  EXPECT_EQ(OtpDecrypt({1, 4}, {3, 4}), 2u);
  EXPECT_EQ(OtpDecrypt({3, 4}, {0, 4}), 3u);
}

TEST(OneTimePadTest, Errors) {
  EXPECT_THROW(OtpEncrypt(4, {0, 4}), ValidationError);
  EXPECT_THROW(OtpEncrypt(0, {4, 4}), ValidationError);
  EXPECT_THROW(OtpDecrypt({1, 4}, {1, 5}), ValidationError);
  EXPECT_THROW(OtpEncrypt(0, {0, 0}), ValidationError);
}

TEST(OneTimePadTest, RoundTripAllPairs) {
  for (std::uint32_t t = 1; t <= 6; ++t) {
    for (Symbol x = 0; x < t; ++x) {
      for (Symbol w = 0; w < t; ++w) {
        EXPECT_EQ(OtpDecrypt(OtpEncrypt(x, {w, t}), {w, t}), x);
      }
    }
  }
}

// Skewed P(X) with a uniform key: the padded value is uniform and
// independent of X.
TEST(OneTimePadTest, PaddedSecretIsUniformAndIndependent) {
  for (std::uint32_t t = 2; t <= 5; ++t) {
    JointDist::Table table;
    std::int64_t total = t * (t + 1) / 2;
    for (Symbol x = 0; x < t; ++x) {
      for (Symbol w = 0; w < t; ++w) {
        table[{x, OtpEncrypt(x, {w, t}).value}] +=
            MakeRational(x + 1, total) * MakeRational(1, t);
      }
    }
    const auto d = JointDist::Create({{"X", t}, {"Xt", t}}, table);
    EXPECT_EQ(Marginalize(d, {"Xt"}), JointDist::Uniform({"Xt", t}));
    EXPECT_TRUE(ExactIndependent(d, {"X"}, {"Xt"}));
    EXPECT_EQ(MutualInformation(d, {"X"}, {"Xt"}), 0.0);
    EXPECT_NEAR(ConditionalEntropy(d, {"Xt"}, {"X"}), std::log2(t), 1e-12);
  }
}

TEST(BitstringTest, Basics) {
  EXPECT_EQ(Bitstring::FromUint(5, 4).ToString(), "0101");
  EXPECT_EQ(Bitstring::FromUint(0, 0).size(), 0u);
  EXPECT_TRUE(B("10").IsPrefixOf(B("101")));
  EXPECT_TRUE(B("").IsPrefixOf(B("1")));
  EXPECT_FALSE(B("11").IsPrefixOf(B("101")));
  auto s = B("1");
  s.Append(B("01"));
  EXPECT_EQ(s, B("101"));
  EXPECT_THROW(B("12"), ValidationError);
}

TEST(BitstringTest, PackIsBigEndianAndZeroPadded) {
  const auto bytes = PackBits(B("1000000011"));
  ASSERT_EQ(bytes.size(), 2u);
  EXPECT_EQ(bytes[0], 0x80);
  EXPECT_EQ(bytes[1], 0xC0);
  EXPECT_EQ(UnpackBits(bytes, 10), B("1000000011"));
  EXPECT_THROW(UnpackBits(bytes, 17), ValidationError);
}

TEST(FixedLengthCodebookTest, Examples) {
  EXPECT_EQ(FixedLengthCodebook(4).Encode(3), B("11"));
  EXPECT_EQ(FixedLengthCodebook(5).Encode(4).size(), 3u);
  EXPECT_EQ(FixedLengthCodebook(1).Encode(0).size(), 0u);
  const auto c = FixedLengthCodebook(7);
  for (Symbol s = 0; s < 7; ++s) {
    EXPECT_EQ(c.Encode(s).size(), 3u);
    EXPECT_EQ(c.DecodeExact(c.Encode(s)), s);
  }
  EXPECT_TRUE(VerifyPrefixFree(c));
  EXPECT_EQ(c.mode(), CodingMode::kFixedLength);
}

TEST(EntropyCodebookTest, Examples) {
  const auto u2 = EntropyCodebook({R(1, 2), R(1, 2)});
  EXPECT_EQ(u2.Encode(0).size(), 1u);
  EXPECT_EQ(u2.Encode(1).size(), 1u);
  const auto dyadic = EntropyCodebook({R(1, 2), R(1, 4), R(1, 4)});
  EXPECT_EQ(dyadic.ExpectedLength({R(1, 2), R(1, 4), R(1, 4)}), R(3, 2));
  EXPECT_EQ(dyadic.Encode(0), B("0"));
  EXPECT_EQ(dyadic.Encode(1), B("10"));
  EXPECT_EQ(dyadic.Encode(2), B("11"));
  const auto point = EntropyCodebook({R(0), R(1), R(0)});
  EXPECT_EQ(point.Encode(1).size(), 0u);
  EXPECT_THROW(point.Encode(0), ValidationError);
}

TEST(EntropyCodebookTest, DeterministicForIdenticalInput) {
  const std::vector<Rational> d{R(1, 5), R(1, 5), R(1, 5), R(1, 5), R(1, 5)};
  EXPECT_EQ(EntropyCodebook(d).words(), EntropyCodebook(d).words());
}

TEST(VerifyPrefixFreeTest, Examples) {
  EXPECT_TRUE(VerifyPrefixFree({B("0"), B("10"), B("11")}));
  EXPECT_FALSE(VerifyPrefixFree({B("0"), B("01")}));
  EXPECT_FALSE(VerifyPrefixFree({B("1"), B("1")}));
  EXPECT_THROW(Codebook(CodingMode::kEntropy, {B("0"), B("01")}),
               ValidationError);
}

TEST(CodebookTest, DecodeErrors) {
  const auto c = EntropyCodebook({R(1, 2), R(1, 4), R(1, 4)});
  EXPECT_THROW(c.DecodeExact(B("1")), ValidationError);
  EXPECT_THROW(c.DecodeExact(B("00")), ValidationError);
  EXPECT_THROW(c.Encode(3), ValidationError);
  EXPECT_EQ(ParseCodingMode("entropy"), CodingMode::kEntropy);
  EXPECT_EQ(CodingModeName(CodingMode::kFixedLength), "fixed");
  EXPECT_THROW(ParseCodingMode("huffman"), ValidationError);
}

TEST(CodebookPropertyTest, KraftPrefixFreeAndLengthWindow) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const auto dist = RandomMarginal(rng, n);
    for (auto mode : {CodingMode::kFixedLength, CodingMode::kEntropy}) {
      const auto c = MakeCodebook(mode, dist);
      EXPECT_TRUE(VerifyPrefixFree(c));
      EXPECT_LE(c.KraftSum(), 1);
    }
    const auto c = EntropyCodebook(dist);
    const double h = Entropy(dist);
    const double len = ToDouble(c.ExpectedLength(dist));
    EXPECT_GE(len + 1e-12, h);
    EXPECT_LT(len, h + 1.0);
  }
}

TEST(CodebookPropertyTest, ConcatenationDecodesUniquely) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 9;
    const auto dist = RandomMarginal(rng, n);
    const auto c = MakeCodebook(trial % 2 ? CodingMode::kEntropy
                                          : CodingMode::kFixedLength,
                                dist);
    std::vector<Symbol> support;
    for (Symbol s = 0; s < n; ++s) {
      if (c.words()[s]) support.push_back(s);
    }
    std::vector<Symbol> message;
    Bitstring bits;
    for (int i = 0; i < 20; ++i) {
      message.push_back(support[rng() % support.size()]);
      bits.Append(c.Encode(message.back()));
    }
    // Zero-length words carry no symbol boundary; skip that degenerate case.
    if (c.Encode(message[0]).empty()) continue;
    std::size_t pos = 0;
    std::vector<Symbol> decoded;
    while (pos < bits.size()) decoded.push_back(c.DecodeNext(bits, &pos));
    EXPECT_EQ(decoded, message);
  }
}

TEST(TranscriptTest, PackRoundTrip) {
  Transcript t;
  t.slots = {{"pad", B("1")}, {"C1", B("")}, {"C2", B("0110101011")}};
  EXPECT_EQ(t.total_length(), 11u);
  EXPECT_EQ(t.ToDebugString(), "1||0110101011");
  EXPECT_EQ(t.Flatten(), B("10110101011"));
  const auto bytes = PackTranscript(t);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "PVLC");
  EXPECT_EQ(UnpackTranscript(bytes), t);
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(UnpackTranscript(bad), ValidationError);
  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_THROW(UnpackTranscript(truncated), ValidationError);
}

}  // namespace
}  // namespace pvlc
