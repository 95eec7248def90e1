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
#include "pvlc/cache_aided.h"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <memory>
#include <sstream>
#include <tuple>

#include "pvlc/bounds.h"
#include "pvlc/information.h"

namespace pvlc {
namespace {

std::vector<std::uint64_t> FilesOf(const JointDist& database,
                                   const Outcome& o, std::size_t N) {
  std::vector<std::uint64_t> files;
  for (std::size_t n = 1; n <= N; ++n) {
    files.push_back(o[database.IndexOf(FileVar(n))]);
  }
  return files;
}

void CheckDemands(const CacheConfig& cfg,
                  const std::vector<std::size_t>& demands) {
  if (demands.size() != cfg.K()) {
    throw ValidationError("need one demand per user (" +
                          std::to_string(cfg.K()) + ")");
  }
  for (auto d : demands) {
    if (d < 1 || d > cfg.N()) {
      throw ValidationError("demand " + std::to_string(d) + " outside [1, " +
                            std::to_string(cfg.N()) + "]");
    }
  }
}

std::size_t SubsetIndex(const std::vector<std::vector<std::size_t>>& subsets,
                        const std::vector<std::size_t>& s) {
  const auto it = std::find(subsets.begin(), subsets.end(), s);
  if (it == subsets.end()) throw InvariantViolation("unknown subset");
  return static_cast<std::size_t>(it - subsets.begin());
}

std::vector<std::size_t> Without(const std::vector<std::size_t>& s,
                                 std::size_t j) {
  std::vector<std::size_t> out;
  for (auto v : s) {
    if (v != j) out.push_back(v);
  }
  return out;
}

}  // namespace

std::uint64_t Binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::vector<std::size_t>> ColexSubsets(std::size_t n,
                                                   std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  if (r > n) return out;
  std::vector<std::size_t> cur;
  // Colex order equals lexicographic order of the reversed subsets; build
  // by picking the largest element first.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t max,
                                                          std::size_t left) {
    if (left == 0) {
      out.emplace_back(cur.rbegin(), cur.rend());
      return;
    }
    for (std::size_t v = left; v <= max; ++v) {
      cur.push_back(v);
      rec(v - 1, left - 1);
      cur.pop_back();
    }
  };
  rec(n, r);
  return out;
}

CacheConfig CacheConfig::Create(std::size_t N, std::size_t K,
                                const Rational& M, std::size_t F) {
  if (N < 1 || K < 1 || F < 1) {
    throw ValidationError("cache config needs N, K, F >= 1");
  }
  const Rational t = Rational(static_cast<std::int64_t>(K)) * M /
                     Rational(static_cast<std::int64_t>(N));
  if (denominator(t) != 1) {
    throw ValidationError("KM/N = " + ToString(t) +
                          " is not an integer; memory sharing is unsupported");
  }
  if (t < 1 || t > static_cast<std::int64_t>(K)) {
    throw ValidationError("cache size M must lie in {N/K, 2N/K, ..., N}");
  }
  CacheConfig c;
  c.N_ = N;
  c.K_ = K;
  c.F_ = F;
  c.M_ = M;
  c.t_ = numerator(t).convert_to<std::size_t>();
  c.subfiles_ = Binomial(K, c.t_);
  c.Q_ = Binomial(K, c.t_ + 1);
  if (F % c.subfiles_ != 0) {
    throw ValidationError("F = " + std::to_string(F) +
                          " is not divisible by C(K, t) = " +
                          std::to_string(c.subfiles_));
  }
  if (F > 64) throw ValidationError("files wider than 64 bits unsupported");
  return c;
}

Rational CacheConfig::buffer_fraction() const {
  return MakeRational(1, static_cast<std::int64_t>(subfiles_));
}

std::uint64_t Subfile(const CacheConfig& cfg, std::uint64_t file,
                      std::size_t subset_index) {
  const std::size_t b = cfg.block_bits();
  const std::size_t shift = cfg.F() - (subset_index + 1) * b;
  const std::uint64_t mask = b == 64 ? ~std::uint64_t{0}
                                     : (std::uint64_t{1} << b) - 1;
  return (file >> shift) & mask;
}

std::vector<UserCache> Placement(const CacheConfig& cfg,
                                 const std::vector<std::uint64_t>& files) {
  if (files.size() != cfg.N()) throw ValidationError("need N file values");
  const auto subsets = ColexSubsets(cfg.K(), cfg.t());
  std::vector<UserCache> caches(cfg.K());
  for (std::size_t k = 1; k <= cfg.K(); ++k) {
    auto& cache = caches[k - 1];
    cache.user = k;
    for (std::size_t n = 1; n <= cfg.N(); ++n) {
      for (std::size_t j = 0; j < subsets.size(); ++j) {
        const auto& s = subsets[j];
        if (std::find(s.begin(), s.end(), k) == s.end()) continue;
        cache.subfiles[{n, j}] = Subfile(cfg, files[n - 1], j);
        cache.bits += cfg.block_bits();
      }
    }
  }
  return caches;
}

std::string BlockStream::ToHex() const {
  std::ostringstream out;
  const std::size_t digits = std::max<std::size_t>(1, (block_bits + 3) / 4);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i > 0) out << ' ';
    out << std::hex << std::setw(static_cast<int>(digits))
        << std::setfill('0') << blocks[i];
  }
  return out.str();
}

BlockStream DeliveryBlocks(const CacheConfig& cfg,
                           const std::vector<std::uint64_t>& files,
                           const std::vector<std::size_t>& demands) {
  CheckDemands(cfg, demands);
  if (files.size() != cfg.N()) throw ValidationError("need N file values");
  const auto omegas = ColexSubsets(cfg.K(), cfg.t());
  BlockStream stream;
  stream.block_bits = cfg.block_bits();
  stream.subsets = ColexSubsets(cfg.K(), cfg.t() + 1);
  for (const auto& gamma : stream.subsets) {
    std::uint64_t block = 0;
    for (auto j : gamma) {
      block ^= Subfile(cfg, files[demands[j - 1] - 1],
                       SubsetIndex(omegas, Without(gamma, j)));
    }
    stream.blocks.push_back(block);
  }
  return stream;
}

std::string BlockVar(std::size_t i) { return "B" + std::to_string(i); }

JointDist BlockJoint(const CacheConfig& cfg, const JointDist& database,
                     const std::vector<std::size_t>& demands) {
  CheckDemands(cfg, demands);
  const std::size_t xi = database.IndexOf("X");
  std::vector<Alphabet> vars{database.variables()[xi]};
  for (std::size_t i = 1; i <= cfg.Q(); ++i) {
    vars.push_back({BlockVar(i), std::size_t{1} << cfg.block_bits()});
  }
  JointDist::Table table;
  for (const auto& [o, p] : database.table()) {
    const auto stream =
        DeliveryBlocks(cfg, FilesOf(database, o, cfg.N()), demands);
    Outcome key{o[xi]};
    for (auto b : stream.blocks) key.push_back(static_cast<Symbol>(b));
    table[key] += p;
  }
  return JointDist::Create(std::move(vars), std::move(table));
}

Transcript PrivateWrap(const BlockStream& stream, Symbol x, const PadKey& key,
                       const Scheme& block_scheme, CouplingSource& draws,
                       std::vector<Bitstring>* public_cache) {
  if (stream.blocks.size() > block_scheme.size()) {
    throw ValidationError("block scheme has fewer stages than the stream");
  }
  // Non-owning handle: the scheme already covers every block, so the
  // encoder never extends it.
  SequentialEncoder encoder(std::shared_ptr<Scheme>(
      std::shared_ptr<Scheme>(), const_cast<Scheme*>(&block_scheme)));
  Transcript t;
  t.slots.push_back({SlotLabel(0), encoder.Begin(x, key)});
  for (std::size_t i = 0; i < stream.blocks.size(); ++i) {
    t.slots.push_back(
        {SlotLabel(i + 1),
         encoder.Next(BlockVar(i + 1), static_cast<Symbol>(stream.blocks[i]),
                      draws)});
  }
  if (public_cache != nullptr) *public_cache = encoder.public_cache();
  return t;
}

std::pair<Symbol, std::vector<std::uint64_t>> DecodeBlocks(
    const Transcript& t, const PadKey& key, const Scheme& block_scheme) {
  if (t.slots.size() != block_scheme.size() + 1) {
    throw ValidationError("transcript does not match the block scheme");
  }
  std::vector<std::uint64_t> out;
  const Symbol padded =
      block_scheme.pad_codebook().DecodeExact(t.slots[0].bits);
  const Symbol x = OtpDecrypt({padded, key.modulus}, key);
  Outcome prefix{x};
  for (std::size_t i = 0; i < block_scheme.size(); ++i) {
    const auto& stage = block_scheme.chain().stages()[i];
    const Symbol u =
        block_scheme.stage_codebook(i).DecodeExact(t.slots[i + 1].bits);
    out.push_back(stage.mechanism.Decode(u, stage.CompoundSymbol(prefix)));
    prefix.push_back(u);
  }
  return {x, out};
}

std::uint64_t UserDecode(const CacheConfig& cfg, std::size_t user,
                         const Transcript& t, const UserCache& cache,
                         const PadKey& key,
                         const std::vector<std::size_t>& demands,
                         const Scheme& block_scheme) {
  CheckDemands(cfg, demands);
  if (user < 1 || user > cfg.K() || cache.user != user) {
    throw ValidationError("cache does not belong to user " +
                          std::to_string(user));
  }
  const auto blocks = DecodeBlocks(t, key, block_scheme).second;
  const auto omegas = ColexSubsets(cfg.K(), cfg.t());
  const auto gammas = ColexSubsets(cfg.K(), cfg.t() + 1);
  const std::size_t want = demands[user - 1];
  auto cached = [&](std::size_t file, std::size_t omega) {
    const auto it = cache.subfiles.find({file, omega});
    if (it == cache.subfiles.end()) {
      throw ValidationError("subfile missing from user cache");
    }
    return it->second;
  };
  std::uint64_t file = 0;
  for (std::size_t j = 0; j < omegas.size(); ++j) {
    const auto& omega = omegas[j];
    std::uint64_t part = 0;
    if (std::find(omega.begin(), omega.end(), user) != omega.end()) {
      part = cached(want, j);
    } else {
      auto gamma = omega;
      gamma.insert(std::upper_bound(gamma.begin(), gamma.end(), user), user);
      const std::size_t g = SubsetIndex(gammas, gamma);
      part = blocks.at(g);
      for (auto other : gamma) {
        if (other == user) continue;
        part ^= cached(demands[other - 1],
                       SubsetIndex(omegas, Without(gamma, other)));
      }
    }
    file = (file << cfg.block_bits()) | part;
  }
  return file;
}

std::uint64_t Theorem3Bound(const CacheConfig& cfg, std::size_t x_size) {
  const std::vector<BigInt> sizes(cfg.Q(), BigInt(1) << cfg.block_bits());
  return UpperBoundCardinality(BigInt(x_size), sizes);
}

CacheAuditReport AuditCacheSession(const CacheConfig& cfg,
                                   const JointDist& database,
                                   const std::vector<std::size_t>& demands,
                                   CodingMode mode,
                                   std::uint64_t state_limit) {
  CheckDemands(cfg, demands);
  if (CountFiles(database) != cfg.N()) {
    throw ValidationError("database must hold files Y1..YN");
  }
  VarList targets;
  for (std::size_t i = 1; i <= cfg.Q(); ++i) targets.push_back(BlockVar(i));
  const JointDist blocks = BlockJoint(cfg, database, demands);
  const Scheme scheme =
      Scheme::Build(blocks, targets, mode, "X", state_limit);
  const std::uint32_t T = scheme.key_size();
  const std::size_t xi = database.IndexOf("X");

  CacheAuditReport report;
  std::map<std::string, Symbol> index;
  std::vector<std::size_t> lengths;
  JointDist::Table table;
  for (const auto& [o, p] : database.table()) {
    const auto files = FilesOf(database, o, cfg.N());
    const auto caches = Placement(cfg, files);
    const auto stream = DeliveryBlocks(cfg, files, demands);
    for (Symbol w = 0; w < T; ++w) {
      const PadKey key{w, T};
      OdometerCoupling odometer;
      do {
        if (++report.outcomes > state_limit) {
          throw ResourceLimitExceeded("cache audit exceeds the state limit");
        }
        std::vector<Bitstring> public_cache;
        const Transcript t =
            PrivateWrap(stream, o[xi], key, scheme, odometer, &public_cache);
        for (std::size_t k = 1; k <= cfg.K(); ++k) {
          try {
            if (UserDecode(cfg, k, t, caches[k - 1], key, demands, scheme) !=
                files[demands[k - 1] - 1]) {
              ++report.decode_failures;
            }
          } catch (const ValidationError&) {
            ++report.decode_failures;
          }
        }
        std::string view = t.ToDebugString() + "#";
        for (std::size_t i = 0; i < public_cache.size(); ++i) {
          if (i > 0) view += '|';
          view += public_cache[i].ToString();
        }
        const auto [it, fresh] =
            index.emplace(view, static_cast<Symbol>(lengths.size()));
        if (fresh) lengths.push_back(t.total_length());
        table[{it->second, o[xi], w}] +=
            p * MakeRational(1, T) * odometer.weight();
      } while (odometer.Advance());
    }
  }
  TranscriptDistribution td;
  td.lengths = lengths;
  td.transcripts.resize(index.size());
  for (const auto& [view, sym] : index) td.transcripts[sym] = view;
  td.joint = JointDist::Create(
      {{"C", index.size()}, database.variables()[xi], {"W", T}},
      std::move(table));
  report.leakage = AuditLeakage(td);
  report.length = ExpectedLength(td);
  report.bound = Theorem3Bound(cfg, database.variables()[xi].size);
  return report;
}

}  // namespace pvlc
