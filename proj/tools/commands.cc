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
#include "commands.h"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "pvlc/bounds.h"
#include "pvlc/cache_aided.h"
#include "pvlc/dist_spec.h"
#include "pvlc/frl.h"
#include "pvlc/information.h"
#include "pvlc/pipeline.h"

namespace pvlc::cli {
namespace {

using nlohmann::ordered_json;

JointDist LoadSource(const SourceOptions& s, std::uint64_t limit) {
  if (!s.spec.empty() && s.example1) {
    throw ValidationError("give either --spec or --example1, not both");
  }
  if (!s.spec.empty()) return LoadDistSpec(s.spec);
  if (!s.example1) throw ValidationError("give --spec PATH or --example1");
  return Example1Build({.p = ParseRational(s.p), .N = s.N, .K = s.K, .F = s.F},
                       limit);
}

DemandVector DefaultDemands(std::size_t K) {
  DemandVector d;
  for (std::size_t k = 1; k <= K; ++k) d.files.push_back(k);
  return d;
}

DemandVector ResolveDemands(const RunOptions& o) {
  if (!o.demands.empty()) return ParseDemands(o.demands);
  if (o.source.example1) return DefaultDemands(o.source.K);
  throw ValidationError("--demands is required with --spec");
}

void CheckFormat(const std::string& format) {
  if (format != "json" && format != "csv") {
    throw ValidationError("--format must be 'json' or 'csv'");
  }
}

std::string Fixed(double v) {
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

std::string CsvQuote(const std::string& s) {
  return s.find(',') == std::string::npos ? s : '"' + s + '"';
}

void WriteFile(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  f << body;
}

void WriteReport(const std::string& path, const std::string& format,
                 const ordered_json& json, const std::string& csv) {
  if (path.empty()) return;
  WriteFile(path, format == "json" ? json.dump(2) + "\n" : csv);
}

Outcome SampleOutcome(const JointDist& d, CouplingSource& rng) {
  std::vector<Rational> w;
  std::vector<const Outcome*> o;
  for (const auto& [outcome, p] : d.table()) {
    w.push_back(p);
    o.push_back(&outcome);
  }
  return *o[rng.Pick(w)];
}

PadKey SampleKey(std::uint32_t T, CouplingSource& rng) {
  const std::vector<Rational> w(T, MakeRational(1, T));
  return {static_cast<Symbol>(rng.Pick(w)), T};
}

ordered_json BoundsJson(const BoundReport& b) {
  ordered_json j;
  j["lower"] = b.lower;
  j["upper_cardinality"] = b.upper_cardinality;
  if (b.upper_entropy_estimate) {
    j["upper_entropy_estimate"] = *b.upper_entropy_estimate;
    j["estimate_note"] = EntropyEstimate::kLabel;
  }
  if (b.measured) j["measured"] = *b.measured;
  j["sandwich"] = b.SandwichHolds();
  return j;
}

const char* YesNo(bool b) { return b ? "yes" : "no"; }

}  // namespace

int FrlBuild(const FrlOptions& o, std::ostream& text) {
  CheckFormat(o.format);
  const JointDist pxy = LoadDistSpec(o.spec);
  if (pxy.arity() != 2) {
    throw ValidationError("frl build needs a spec with exactly two variables");
  }
  OrderingPolicy policy;
  std::optional<OrderingSearchResult> search;
  if (o.search_budget > 0) {
    search = MinEntropySearch(pxy, o.search_budget);
    policy = search->policy;
  }
  const FrlMechanism m = FrlConstruct(pxy, policy);
  const auto bound = CardinalityBound(pxy.variables()[0].size, {},
                                      pxy.variables()[1].size);
  text << DumpMechanism(m);
  text << "cardinality bound: " << bound << '\n';
  if (search) {
    text << "ordering search: " << search->evaluated
         << " orderings, best H(U) = " << Fixed(search->entropy)
         << " bits (surrogate, not a proven minimum)\n";
  }

  ordered_json j;
  j["spec"] = o.spec;
  j["atoms"] = ordered_json::array();
  for (std::size_t u = 0; u < m.size(); ++u) {
    j["atoms"].push_back({{"begin", ToString(m.atoms[u].begin)},
                          {"end", ToString(m.atoms[u].end)},
                          {"p", ToString(m.p_u[u])}});
  }
  j["g"] = ordered_json::array();
  for (const auto& row : m.g) {
    ordered_json r = ordered_json::array();
    for (const auto& y : row) {
      if (y) {
        r.push_back(*y);
      } else {
        r.push_back(nullptr);
      }
    }
    j["g"].push_back(r);
  }
  j["entropy"] = MechanismEntropy(m);
  j["cardinality_bound"] = bound;
  j["warnings"] = m.warnings;
  std::ostringstream csv;
  csv << "u,begin,end,p\n";
  for (std::size_t u = 0; u < m.size(); ++u) {
    csv << u << ',' << ToString(m.atoms[u].begin) << ','
        << ToString(m.atoms[u].end) << ',' << ToString(m.p_u[u]) << '\n';
  }
  WriteReport(o.out, o.format, j, csv.str());
  return 0;
}

int PipelineRun(const RunOptions& o, std::ostream& text) {
  CheckFormat(o.format);
  const JointDist base = LoadSource(o.source, o.limit);
  const DemandVector d = ResolveDemands(o);
  ValidateDemands(d, CountFiles(base));
  const CodingMode mode = ParseCodingMode(o.mode);
  const Scheme scheme =
      Scheme::Build(base, DemandTargets(d), mode, "X", o.limit);

  SeededCoupling rng(o.seed);
  const Outcome real = SampleOutcome(base, rng);
  const PadKey key = SampleKey(scheme.key_size(), rng);
  const Transcript t = EncodeSession(base, real, d, key, scheme, rng);
  const DecodedSession decoded = DecodeSession(t, key, d, scheme);
  bool sample_ok = decoded.x == real[base.IndexOf("X")];
  for (std::size_t i = 0; i < d.size(); ++i) {
    sample_ok = sample_ok &&
                decoded.files[i] == real[base.IndexOf(FileVar(d.files[i]))];
  }
  if (!o.transcript_out.empty()) {
    const auto bytes = PackTranscript(t);
    WriteFile(o.transcript_out, std::string(bytes.begin(), bytes.end()));
  }

  const auto td = BuildTranscriptDistribution(base, d, scheme, o.limit);
  const auto leak = AuditLeakage(td);
  const auto len = ExpectedLength(td);
  const auto lossless = VerifyLossless(base, d, scheme, o.limit);
  const BoundReport bounds = SessionBounds(base, d, scheme, len.max);
  const auto estimate = UpperBoundEntropyEstimate(scheme.chain());
  double entropy_cap = std::ceil(std::log2(base.variable("X").size) - 1e-12);
  for (double h : estimate.stage_entropies) entropy_cap += h + 1.0;
  const bool entropy_ok = ToDouble(len.max) <= entropy_cap + 1e-9;

  const bool ok = leak.exact_zero && lossless.ok() && bounds.SandwichHolds() &&
                  len.equal_over_keys && sample_ok && entropy_ok;

  text << "demands: " << FormatDemands(d) << "  mode: " << o.mode
       << "  seed: " << o.seed << '\n';
  text << "stages:\n";
  for (std::size_t i = 0; i < scheme.size(); ++i) {
    const auto& st = scheme.chain().stages()[i];
    text << "  " << st.u_name << " for " << st.target
         << ": |U| = " << st.mechanism.size()
         << ", H(U) = " << Fixed(estimate.stage_entropies[i]) << " bits\n";
  }
  text << "sample: x = " << decoded.x << ", key = " << key.value
       << ", transcript = " << t.ToDebugString() << " (" << t.total_length()
       << " bits), decoded " << (sample_ok ? "correctly" : "INCORRECTLY")
       << '\n';
  text << "leakage: exact zero " << YesNo(leak.exact_zero)
       << ", I(C;X) = " << Fixed(leak.bits) << " bits\n";
  text << "expected length per key:";
  for (const auto& v : len.per_key) text << ' ' << ToString(v);
  text << "  (max " << Fixed(ToDouble(len.max)) << " bits)\n";
  text << "lossless: " << lossless.outcomes - lossless.failures << '/'
       << lossless.outcomes << " outcomes\n";
  text << "bounds: lower " << Fixed(bounds.lower) << " <= measured "
       << Fixed(*bounds.measured) << " <= upper " << bounds.upper_cardinality
       << "  sandwich " << YesNo(bounds.SandwichHolds()) << '\n';
  text << "entropy estimate: " << estimate.bits << " bits ("
       << EntropyEstimate::kLabel << ")\n";
  text << "status: " << (ok ? "ok" : "INVARIANT FAILURE") << '\n';

  ordered_json j;
  j["inputs"] = {{"spec", o.source.spec},
                 {"example1", o.source.example1},
                 {"p", o.source.p},
                 {"N", o.source.N},
                 {"K", o.source.K},
                 {"F", o.source.F},
                 {"demands", FormatDemands(d)},
                 {"mode", o.mode},
                 {"seed", o.seed},
                 {"limit", o.limit}};
  j["stages"] = ordered_json::array();
  for (std::size_t i = 0; i < scheme.size(); ++i) {
    const auto& st = scheme.chain().stages()[i];
    j["stages"].push_back({{"target", st.target},
                           {"size", st.mechanism.size()},
                           {"entropy", estimate.stage_entropies[i]}});
  }
  ordered_json slots = ordered_json::array();
  for (const auto& s : t.slots) {
    slots.push_back({{"label", s.label}, {"bits", s.bits.ToString()}});
  }
  j["sample"] = {{"x", decoded.x},
                 {"key", key.value},
                 {"slots", slots},
                 {"decoded_ok", sample_ok}};
  ordered_json per_key = ordered_json::array();
  for (const auto& v : len.per_key) per_key.push_back(ToString(v));
  j["expected_length"] = {{"per_key", per_key},
                          {"max", ToString(len.max)},
                          {"equal_over_keys", len.equal_over_keys}};
  j["leakage"] = {{"exact_zero", leak.exact_zero}, {"bits", leak.bits}};
  j["lossless"] = {{"outcomes", lossless.outcomes},
                   {"failures", lossless.failures}};
  j["bounds"] = BoundsJson(bounds);
  j["ok"] = ok;
  std::ostringstream csv;
  csv << "N,K,F,demands,lower,upper_card,upper_est,measured,ratio\n"
      << CountFiles(base) << ',' << d.size() << ','
      << (o.source.example1 ? std::to_string(o.source.F) : "") << ','
      << CsvQuote(FormatDemands(d)) << ',' << Fixed(bounds.lower) << ','
      << bounds.upper_cardinality << ',' << *bounds.upper_entropy_estimate
      << ',' << Fixed(*bounds.measured) << ','
      << (bounds.lower > 0
              ? Fixed(double(bounds.upper_cardinality) / bounds.lower)
              : "")
      << '\n';
  WriteReport(o.out, o.format, j, csv.str());
  return ok ? 0 : static_cast<int>(ErrorKind::kInvariant);
}

int Audit(const RunOptions& o, std::ostream& text) {
  CheckFormat(o.format);
  const JointDist base = LoadSource(o.source, o.limit);
  const DemandVector d = ResolveDemands(o);
  ValidateDemands(d, CountFiles(base));
  const Scheme scheme = Scheme::Build(base, DemandTargets(d),
                                      ParseCodingMode(o.mode), "X", o.limit);
  const auto scheme_leak =
      AuditLeakage(BuildTranscriptDistribution(base, d, scheme, o.limit));
  const auto baseline_leak =
      AuditLeakage(BuildUncodedBaseline(base, d, o.limit));
  text << "scheme:   exact zero " << YesNo(scheme_leak.exact_zero)
       << ", I(C;X) = " << Fixed(scheme_leak.bits) << " bits\n";
  text << "uncoded:  exact zero " << YesNo(baseline_leak.exact_zero)
       << ", I(C;X) = " << Fixed(baseline_leak.bits) << " bits\n";
  ordered_json j;
  j["demands"] = FormatDemands(d);
  j["scheme"] = {{"exact_zero", scheme_leak.exact_zero},
                 {"bits", scheme_leak.bits}};
  j["uncoded"] = {{"exact_zero", baseline_leak.exact_zero},
                  {"bits", baseline_leak.bits}};
  std::ostringstream csv;
  csv << "encoder,exact_zero,bits\n"
      << "scheme," << scheme_leak.exact_zero << ',' << Fixed(scheme_leak.bits)
      << "\nuncoded," << baseline_leak.exact_zero << ','
      << Fixed(baseline_leak.bits) << '\n';
  WriteReport(o.out, o.format, j, csv.str());
  return scheme_leak.exact_zero ? 0 : static_cast<int>(ErrorKind::kInvariant);
}

int BoundsSweep(const SweepOptions& o, std::ostream& text) {
  CheckFormat(o.format);
  const Rational p = ParseRational(o.p);
  if (o.K < 1 || o.K > o.N) throw ValidationError("need 1 <= K <= N");
  const DemandVector d = DefaultDemands(o.K);
  std::ostringstream csv;
  csv << "N,K,F,demands,lower,upper_card,upper_est,measured,ratio\n";
  ordered_json rows = ordered_json::array();
  bool ok = true;
  for (std::size_t F = o.F_min; F <= o.F_max; ++F) {
    const auto r = Example1RatioAt(o.K, F);
    std::optional<std::uint64_t> est;
    std::optional<double> measured;
    if (o.measure) {
      const auto base =
          Example1Build({.p = p, .N = o.N, .K = o.K, .F = F}, o.limit);
      const Scheme scheme = Scheme::Build(base, DemandTargets(d),
                                          ParseCodingMode(o.mode), "X",
                                          o.limit);
      const auto len =
          ExpectedLength(BuildTranscriptDistribution(base, d, scheme, o.limit));
      const auto b = SessionBounds(base, d, scheme, len.max);
      est = b.upper_entropy_estimate;
      measured = b.measured;
      ok = ok && b.SandwichHolds() &&
           b.lower == static_cast<double>(r.lower_bits);
    }
    csv << o.N << ',' << o.K << ',' << F << ',' << CsvQuote(FormatDemands(d))
        << ',' << r.lower_bits << ',' << r.upper_bits << ','
        << (est ? std::to_string(*est) : "") << ','
        << (measured ? Fixed(*measured) : "") << ',' << Fixed(r.ratio) << '\n';
    ordered_json row{{"N", o.N},         {"K", o.K},
                     {"F", F},           {"demands", FormatDemands(d)},
                     {"lower", r.lower_bits}, {"upper_card", r.upper_bits},
                     {"ratio", r.ratio}};
    row["upper_est"] = est ? ordered_json(*est) : ordered_json(nullptr);
    row["measured"] = measured ? ordered_json(*measured) : ordered_json(nullptr);
    rows.push_back(row);
  }
  text << csv.str();
  WriteReport(o.out, o.format, {{"rows", rows}}, csv.str());
  return ok ? 0 : static_cast<int>(ErrorKind::kInvariant);
}

int CacheDemo(const CacheOptions& o, std::ostream& text) {
  CheckFormat(o.format);
  const CacheConfig cfg =
      CacheConfig::Create(o.N, o.K, ParseRational(o.M), o.F);
  const JointDist db =
      Example1Build({.p = ParseRational(o.p), .N = o.N, .K = 1, .F = o.F},
                    o.limit);
  std::vector<std::size_t> demands;
  if (o.demands.empty()) {
    for (std::size_t k = 0; k < o.K; ++k) demands.push_back(k % o.N + 1);
  } else {
    // Repeats are allowed across users, so parse without the distinctness
    // check.
    std::stringstream in(o.demands);
    std::string item;
    while (std::getline(in, item, ',')) {
      demands.push_back(ParseDemands(item).files.at(0));
    }
  }
  const CodingMode mode = ParseCodingMode(o.mode);
  VarList targets;
  for (std::size_t i = 1; i <= cfg.Q(); ++i) targets.push_back(BlockVar(i));
  const Scheme scheme =
      Scheme::Build(BlockJoint(cfg, db, demands), targets, mode, "X", o.limit);

  SeededCoupling rng(o.seed);
  const Outcome real = SampleOutcome(db, rng);
  const PadKey key = SampleKey(scheme.key_size(), rng);
  const std::vector<std::uint64_t> files(real.begin() + 1, real.end());
  const auto caches = Placement(cfg, files);
  const auto stream = DeliveryBlocks(cfg, files, demands);
  std::vector<Bitstring> public_cache;
  const Transcript t =
      PrivateWrap(stream, real[0], key, scheme, rng, &public_cache);
  bool sample_ok = true;
  std::vector<std::uint64_t> decoded;
  for (std::size_t k = 1; k <= cfg.K(); ++k) {
    decoded.push_back(
        UserDecode(cfg, k, t, caches[k - 1], key, demands, scheme));
    sample_ok = sample_ok && decoded.back() == files[demands[k - 1] - 1];
  }
  const auto audit = AuditCacheSession(cfg, db, demands, mode, o.limit);
  const bool within =
      audit.length.max <= static_cast<std::int64_t>(audit.bound);
  const bool ok = sample_ok && audit.decode_failures == 0 &&
                  audit.leakage.exact_zero && within;

  const auto subsets = ColexSubsets(cfg.K(), cfg.t());
  text << "config: N=" << cfg.N() << " K=" << cfg.K()
       << " M=" << ToString(cfg.M()) << " F=" << cfg.F() << "  t=" << cfg.t()
       << " Q=" << cfg.Q() << " block bits=" << cfg.block_bits() << '\n';
  text << "files:";
  for (auto f : files) text << ' ' << Bitstring::FromUint(f, cfg.F()).ToString();
  text << "  (x = " << real[0] << ", key = " << key.value << ")\n";
  text << "placement:\n";
  for (const auto& z : caches) {
    text << "  Z" << z.user << " (" << z.bits << " bits):";
    for (const auto& [k, v] : z.subfiles) {
      text << " Y" << k.first << ",{";
      for (std::size_t i = 0; i < subsets[k.second].size(); ++i) {
        text << (i ? "," : "") << subsets[k.second][i];
      }
      text << "}=" << Bitstring::FromUint(v, cfg.block_bits()).ToString();
    }
    text << '\n';
  }
  text << "block stream (hex): " << stream.ToHex() << '\n';
  text << "transcript: " << t.ToDebugString() << " (" << t.total_length()
       << " bits)\n";
  text << "public cache:";
  for (const auto& b : public_cache) text << " [" << b.ToString() << ']';
  text << '\n';
  for (std::size_t k = 1; k <= cfg.K(); ++k) {
    text << "user " << k << " wants Y" << demands[k - 1] << ": decoded "
         << Bitstring::FromUint(decoded[k - 1], cfg.F()).ToString() << '\n';
  }
  text << "audit: " << audit.outcomes << " outcomes, "
       << audit.decode_failures << " decode failures, leakage exact zero "
       << YesNo(audit.leakage.exact_zero) << '\n';
  text << "length: measured " << Fixed(ToDouble(audit.length.max))
       << " <= bound " << audit.bound << "  " << YesNo(within) << '\n';
  text << "status: " << (ok ? "ok" : "INVARIANT FAILURE") << '\n';

  ordered_json j;
  j["config"] = {{"N", cfg.N()}, {"K", cfg.K()}, {"M", ToString(cfg.M())},
                 {"F", cfg.F()}, {"t", cfg.t()}, {"Q", cfg.Q()},
                 {"block_bits", cfg.block_bits()}, {"seed", o.seed}};
  j["demands"] = demands;
  j["block_stream"] = stream.ToHex();
  j["transcript"] = t.ToDebugString();
  ordered_json pc = ordered_json::array();
  for (const auto& b : public_cache) pc.push_back(b.ToString());
  j["public_cache"] = pc;
  j["decoded"] = decoded;
  j["audit"] = {{"outcomes", audit.outcomes},
                {"decode_failures", audit.decode_failures},
                {"leakage_exact_zero", audit.leakage.exact_zero},
                {"leakage_bits", audit.leakage.bits},
                {"expected_length", ToString(audit.length.max)},
                {"bound", audit.bound}};
  j["ok"] = ok;
  std::ostringstream csv;
  csv << "N,K,M,F,Q,measured,bound,leakage_zero,decode_failures\n"
      << cfg.N() << ',' << cfg.K() << ',' << ToString(cfg.M()) << ','
      << cfg.F() << ',' << cfg.Q() << ',' << Fixed(ToDouble(audit.length.max))
      << ',' << audit.bound << ',' << audit.leakage.exact_zero << ','
      << audit.decode_failures << '\n';
  WriteReport(o.out, o.format, j, csv.str());
  return ok ? 0 : static_cast<int>(ErrorKind::kInvariant);
}

}  // namespace pvlc::cli
