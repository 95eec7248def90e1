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

// pvlc: command-line front end for the private sequential compression
// library. Exit codes: 0 ok, 1 validation, 2 invariant violation,
// 3 resource limit.

#include <iostream>

#include "CLI11.hpp"
#include "commands.h"

namespace {

void AddSource(CLI::App* app, pvlc::cli::SourceOptions* s) {
  app->add_option("--spec", s->spec, "distribution spec file");
  app->add_flag("--example1", s->example1,
                "use the built-in AND-of-bits family");
  app->add_option("--p", s->p, "P(X = 1) for --example1, as n/d");
  app->add_option("--N", s->N, "number of files");
  app->add_option("--K", s->K, "number of demands");
  app->add_option("--F", s->F, "bits per file");
}

void AddRun(CLI::App* app, pvlc::cli::RunOptions* o) {
  AddSource(app, &o->source);
  app->add_option("--demands", o->demands, "comma-separated file indices");
  app->add_option("--mode", o->mode, "fixed | entropy")
      ->check(CLI::IsMember({"fixed", "entropy"}));
  app->add_option("--seed", o->seed, "seed for the sampled session");
  app->add_option("--limit", o->limit, "enumeration state limit");
  app->add_option("--out", o->out, "write the report to this file");
  app->add_option("--format", o->format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Private sequential variable-length compression toolkit"};
  app.require_subcommand(1);

  pvlc::cli::FrlOptions frl;
  auto* frl_cmd = app.add_subcommand("frl", "functional representation");
  auto* frl_build = frl_cmd->add_subcommand("build", "build and dump U");
  frl_cmd->require_subcommand(1);
  frl_build->add_option("--spec", frl.spec, "two-variable spec (X then Y)")
      ->required();
  frl_build->add_option("--search", frl.search_budget,
                        "search orderings up to this many permutations");
  frl_build->add_option("--out", frl.out, "write the report to this file");
  frl_build->add_option("--format", frl.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  pvlc::cli::RunOptions run;
  auto* pipeline_cmd = app.add_subcommand("pipeline", "sequential scheme");
  pipeline_cmd->require_subcommand(1);
  auto* pipeline_run =
      pipeline_cmd->add_subcommand("run", "encode, decode and audit");
  AddRun(pipeline_run, &run);
  pipeline_run->add_option("--transcript-out", run.transcript_out,
                           "packed binary of the sampled transcript");

  pvlc::cli::RunOptions audit;
  auto* audit_cmd =
      app.add_subcommand("audit", "leakage of the scheme vs. uncoded");
  AddRun(audit_cmd, &audit);

  pvlc::cli::SweepOptions sweep;
  auto* bounds_cmd = app.add_subcommand("bounds", "bound calculators");
  bounds_cmd->require_subcommand(1);
  auto* bounds_sweep =
      bounds_cmd->add_subcommand("sweep", "bounds over a range of F");
  bounds_sweep->add_option("--p", sweep.p, "P(X = 1), as n/d");
  bounds_sweep->add_option("--N", sweep.N, "number of files");
  bounds_sweep->add_option("--K", sweep.K, "number of demands");
  bounds_sweep->add_option("--F-min", sweep.F_min, "first F");
  bounds_sweep->add_option("--F-max", sweep.F_max, "last F");
  bounds_sweep->add_flag("--measure", sweep.measure,
                         "also build the scheme and measure E[L]");
  bounds_sweep->add_option("--mode", sweep.mode, "fixed | entropy")
      ->check(CLI::IsMember({"fixed", "entropy"}));
  bounds_sweep->add_option("--limit", sweep.limit, "enumeration state limit");
  bounds_sweep->add_option("--out", sweep.out, "write rows to this file");
  bounds_sweep->add_option("--format", sweep.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  pvlc::cli::CacheOptions cache;
  auto* cache_cmd = app.add_subcommand("cache", "cache-aided delivery");
  cache_cmd->require_subcommand(1);
  auto* cache_demo = cache_cmd->add_subcommand("demo", "end-to-end demo");
  cache_demo->add_option("--N", cache.N, "number of files");
  cache_demo->add_option("--K", cache.K, "number of users");
  cache_demo->add_option("--M", cache.M, "cache size in files, as n/d");
  cache_demo->add_option("--F", cache.F, "bits per file");
  cache_demo->add_option("--p", cache.p, "P(X = 1), as n/d");
  cache_demo->add_option("--demands", cache.demands,
                         "one file per user, repeats allowed");
  cache_demo->add_option("--mode", cache.mode, "fixed | entropy")
      ->check(CLI::IsMember({"fixed", "entropy"}));
  cache_demo->add_option("--seed", cache.seed, "seed for the sampled session");
  cache_demo->add_option("--limit", cache.limit, "enumeration state limit");
  cache_demo->add_option("--out", cache.out, "write the report to this file");
  cache_demo->add_option("--format", cache.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(pvlc::ErrorKind::kValidation);
  }

  try {
    if (frl_build->parsed()) return pvlc::cli::FrlBuild(frl, std::cout);
    if (pipeline_run->parsed()) return pvlc::cli::PipelineRun(run, std::cout);
    if (audit_cmd->parsed()) return pvlc::cli::Audit(audit, std::cout);
    if (bounds_sweep->parsed()) return pvlc::cli::BoundsSweep(sweep, std::cout);
    if (cache_demo->parsed()) return pvlc::cli::CacheDemo(cache, std::cout);
  } catch (const pvlc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(pvlc::ErrorKind::kInvariant);
  }
  return static_cast<int>(pvlc::ErrorKind::kValidation);
}
