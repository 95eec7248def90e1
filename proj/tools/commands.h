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

#ifndef PVLC_TOOLS_COMMANDS_H_
#define PVLC_TOOLS_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "pvlc/errors.h"

namespace pvlc::cli {

// Where the distribution comes from: a spec file or the built-in family.
struct SourceOptions {
  std::string spec;
  bool example1 = false;
  std::string p = "1/2";
  std::size_t N = 2;
  std::size_t K = 2;
  std::size_t F = 1;
};

struct RunOptions {
  SourceOptions source;
  std::string demands;
  std::string mode = "fixed";
  std::uint64_t seed = 0;
  std::uint64_t limit = kDefaultStateLimit;
  std::string out;
  std::string format = "json";
  std::string transcript_out;
};

struct FrlOptions {
  std::string spec;
  std::uint64_t search_budget = 0;  // 0 = canonical ordering only
  std::string out;
  std::string format = "json";
};

struct SweepOptions {
  std::string p = "1/2";
  std::size_t N = 2;
  std::size_t K = 2;
  std::size_t F_min = 1;
  std::size_t F_max = 32;
  bool measure = false;
  std::string mode = "fixed";
  std::uint64_t limit = kDefaultStateLimit;
  std::string out;
  std::string format = "csv";
};

struct CacheOptions {
  std::size_t N = 2;
  std::size_t K = 2;
  std::string M = "1";
  std::size_t F = 2;
  std::string p = "1/2";
  std::string demands;
  std::string mode = "fixed";
  std::uint64_t seed = 0;
  std::uint64_t limit = kDefaultStateLimit;
  std::string out;
  std::string format = "json";
};

// Each command writes a human report to `text` and returns the exit code.
// Library errors propagate as pvlc::Error.
int FrlBuild(const FrlOptions& o, std::ostream& text);
int PipelineRun(const RunOptions& o, std::ostream& text);
int Audit(const RunOptions& o, std::ostream& text);
int BoundsSweep(const SweepOptions& o, std::ostream& text);
int CacheDemo(const CacheOptions& o, std::ostream& text);

}  // namespace pvlc::cli

#endif  // PVLC_TOOLS_COMMANDS_H_
