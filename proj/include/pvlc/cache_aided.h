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

#ifndef PVLC_CACHE_AIDED_H_
#define PVLC_CACHE_AIDED_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pvlc/errors.h"
#include "pvlc/pipeline.h"

namespace pvlc {

// Coded-caching world with K users, N files of F bits and per-user cache
// of M files. t = KM/N must be an integer in [1, K]; files split into
// C(K, t) subfiles of F / C(K, t) bits, which is also the encoder's buffer.
class CacheConfig {
 public:
  // Throws ValidationError for non-integer t, t outside [1, K], F not
  // divisible by C(K, t) or blocks wider than 64 bits.
  static CacheConfig Create(std::size_t N, std::size_t K, const Rational& M,
                            std::size_t F);

  std::size_t N() const { return N_; }
  std::size_t K() const { return K_; }
  std::size_t F() const { return F_; }
  const Rational& M() const { return M_; }
  std::size_t t() const { return t_; }
  std::size_t subfiles_per_file() const { return subfiles_; }
  std::size_t Q() const { return Q_; }
  std::size_t block_bits() const { return F_ / subfiles_; }
  Rational buffer_fraction() const;

 private:
  CacheConfig() = default;

  std::size_t N_ = 0, K_ = 0, F_ = 0, t_ = 0, subfiles_ = 0, Q_ = 0;
  Rational M_;
};

std::uint64_t Binomial(std::uint64_t n, std::uint64_t k);

// All r-subsets of users {1..n}, each ascending, in colexicographic order.
std::vector<std::vector<std::size_t>> ColexSubsets(std::size_t n,
                                                   std::size_t r);

// Subfile j of a file value (MSB-first bits, j-th group of block_bits).
std::uint64_t Subfile(const CacheConfig& cfg, std::uint64_t file,
                      std::size_t subset_index);

struct UserCache {
  std::size_t user = 0;  // 1-based
  // (file 1-based, index into ColexSubsets(K, t)) -> subfile bits
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> subfiles;
  std::size_t bits = 0;
};

// files[n - 1] is file n. User k stores every subfile whose subset has k.
std::vector<UserCache> Placement(const CacheConfig& cfg,
                                 const std::vector<std::uint64_t>& files);

struct BlockStream {
  std::size_t block_bits = 0;
  std::vector<std::vector<std::size_t>> subsets;  // gamma_1..gamma_Q
  std::vector<std::uint64_t> blocks;

  std::string ToHex() const;
};

// Block for subset gamma: XOR over j in gamma of subfile
// (d_j, gamma \ {j}). demands[k - 1] is user k's file; repeats allowed.
BlockStream DeliveryBlocks(const CacheConfig& cfg,
                           const std::vector<std::uint64_t>& files,
                           const std::vector<std::size_t>& demands);

std::string BlockVar(std::size_t i);

// P(X, B1..BQ) induced by the database "X", "Y1".."YN" and the demands.
JointDist BlockJoint(const CacheConfig& cfg, const JointDist& database,
                     const std::vector<std::size_t>& demands);

// Pad slot then one FRL slot per block. The encoder takes one block at a
// time and recovers earlier U's from `public_cache`, to which every
// emitted block slot is appended.
Transcript PrivateWrap(const BlockStream& stream, Symbol x, const PadKey& key,
                       const Scheme& block_scheme, CouplingSource& draws,
                       std::vector<Bitstring>* public_cache);

// Recovers x and every block from the transcript.
std::pair<Symbol, std::vector<std::uint64_t>> DecodeBlocks(
    const Transcript& t, const PadKey& key, const Scheme& block_scheme);

// User k's demanded file from the transcript and its own cache.
std::uint64_t UserDecode(const CacheConfig& cfg, std::size_t user,
                         const Transcript& t, const UserCache& cache,
                         const PadKey& key,
                         const std::vector<std::size_t>& demands,
                         const Scheme& block_scheme);

// sum over Q blocks of ceil(log2 cap_i) with |Y| = 2^(block bits), plus
// ceil(log2 |X|).
std::uint64_t Theorem3Bound(const CacheConfig& cfg, std::size_t x_size);

struct CacheAuditReport {
  std::uint64_t outcomes = 0;
  std::uint64_t decode_failures = 0;
  // Adversary view = transcript plus public cache, against X.
  LeakageReport leakage;
  LengthReport length;
  std::uint64_t bound = 0;
};

// Full enumeration of database realizations, keys and coupling paths.
CacheAuditReport AuditCacheSession(
    const CacheConfig& cfg, const JointDist& database,
    const std::vector<std::size_t>& demands, CodingMode mode,
    std::uint64_t state_limit = kDefaultStateLimit);

}  // namespace pvlc

#endif  // PVLC_CACHE_AIDED_H_
