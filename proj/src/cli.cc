// Copyright 2026 The shufflesum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "shufflesum/cli.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "shufflesum/group.h"
#include "shufflesum/oracle.h"
#include "shufflesum/planner.h"
#include "shufflesum/protocol.h"
#include "shufflesum/randgraph.h"
#include "shufflesum/sharding.h"
#include "shufflesum/stats.h"
#include "shufflesum/version.h"

namespace shufflesum::cli {
namespace {

// Thrown for parameter errors found after flag parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModulusFlags {
  uint64_t m = 0;
  int m_bits = 0;
  CLI::Option* m_opt = nullptr;
  CLI::Option* bits_opt = nullptr;

  void Register(CLI::App* app) {
    m_opt = app->add_option("--m", m, "group order m (decimal)");
    bits_opt = app->add_option("--m-bits", m_bits, "group order m = 2^bits");
    m_opt->excludes(bits_opt);
    bits_opt->excludes(m_opt);
  }
  bool given() const { return m_opt->count() + bits_opt->count() > 0; }
  void Require() const {
    if (!given()) throw UsageError("one of --m or --m-bits is required");
  }
  // Exact group order; needs m <= 2^63.
  uint64_t Value() const {
    Require();
    if (m_opt->count()) return m;
    if (m_bits < 1 || m_bits > 63) {
      throw UsageError("--m-bits must be in [1, 63] here");
    }
    return uint64_t{1} << m_bits;
  }
  double Log2() const {
    Require();
    if (m_opt->count()) {
      if (m < 2) throw UsageError("--m must be >= 2");
      return std::log2(static_cast<double>(m));
    }
    if (m_bits < 1) throw UsageError("--m-bits must be >= 1");
    return m_bits;
  }
  void Describe(nlohmann::json& params) const {
    if (m_opt->count()) params["m"] = m;
    if (bits_opt->count()) params["m_bits"] = m_bits;
  }
};

uint64_t FreshSeed() {
  std::random_device rd;
  return (static_cast<uint64_t>(rd()) << 32) ^ rd();
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string Scalar(const nlohmann::json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

void FlattenInto(const nlohmann::json& j, const std::string& prefix,
                 bool skip_histogram,
                 std::vector<std::pair<std::string, std::string>>& out) {
  auto join = [&prefix](const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
  };
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (skip_histogram && it.key() == "histogram") continue;
      FlattenInto(it.value(), join(it.key()), skip_histogram, out);
    }
  } else if (j.is_array()) {
    if (j.empty()) out.emplace_back(prefix, "[]");
    for (size_t i = 0; i < j.size(); ++i) {
      FlattenInto(j[i], join(std::to_string(i)), skip_histogram, out);
    }
  } else {
    out.emplace_back(prefix, Scalar(j));
  }
}

constexpr const char* kHistogramColumns[] = {"c", "count", "frequency",
                                             "lemma4_bound"};

void Emit(const nlohmann::json& report, const std::string& format,
          std::ostream& out) {
  if (format == "json") {
    out << report.dump(2) << '\n';
  } else if (format == "csv") {
    out << ToCsv(report);
  } else {
    out << ToTable(report);
  }
}

nlohmann::json BaseReport(const std::string& command) {
  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  return j;
}

int CmdPlan(double sigma, uint64_t n, const ModulusFlags& mf,
            const std::string& format, std::ostream& out) {
  if (n <= 2) throw UsageError("plan: --n must be >= 3");
  if (!(sigma > 0)) throw UsageError("plan: --sigma must be > 0");
  const double log2_m = mf.Log2();
  PlanResult r;
  try {
    r = PlanShuffledKLog2(sigma, std::log2(static_cast<double>(n)), log2_m);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  r.preconditions[0].ok = n >= 19;
  nlohmann::json j = BaseReport("plan");
  j["parameters"] = {{"sigma", sigma}, {"n", n}};
  mf.Describe(j["parameters"]);
  j["k_shuffled"] = r.k_shuffled;
  j["total_messages"] = r.total_messages;
  j["achieved_sigma"] = r.achieved_sigma;
  j["baseline_k_lower_bound"] = BaselineKLowerBound(sigma);
  j["preconditions"] = nlohmann::json::object();
  for (const auto& p : r.preconditions) j["preconditions"][std::string(p.label)] = p.ok;
  j["preconditions_ok"] = r.AllPreconditionsOk();
  Emit(j, format, out);
  return kExitOk;
}

struct SimulateFlags {
  int n = 0;
  int k = 0;
  std::string variant = "plain";
  uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  uint64_t runs = 1;
  std::vector<uint64_t> inputs;
  std::string out_path;
};

int CmdSimulate(const SimulateFlags& f, const ModulusFlags& mf,
                const std::string& format, std::ostream& out,
                std::ostream& err) {
  const uint64_t m_value = mf.Value();
  std::optional<ProtocolParams> params;
  try {
    params.emplace(f.n, f.k, Modulus(m_value), ParseVariant(f.variant));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (f.runs < 1) throw UsageError("simulate: --runs must be >= 1");
  if (!f.inputs.empty() && static_cast<int>(f.inputs.size()) != f.n) {
    throw UsageError("simulate: --inputs must list exactly n values");
  }
  for (uint64_t x : f.inputs) {
    if (x >= m_value) throw UsageError("simulate: inputs must be < m");
  }
  for (const auto& w : params->AdvisoryWarnings()) {
    err << "warning: security precondition " << w << " not met\n";
  }
  const uint64_t seed = f.seed_opt->count() ? f.seed : FreshSeed();
  const RandomStream root =
      RandomStream(seed).Split(static_cast<uint64_t>(StreamFamily::kSimulation));

  std::ofstream file;
  if (!f.out_path.empty()) {
    file.open(f.out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw UsageError("simulate: cannot open " + f.out_path);
  }
  nlohmann::json j = BaseReport("simulate");
  j["parameters"] = {{"n", f.n},          {"k", f.k},
                     {"m", m_value},      {"variant", f.variant},
                     {"runs", f.runs},    {"seed", seed}};
  j["runs"] = nlohmann::json::array();
  bool all_ok = true;
  for (uint64_t run = 0; run < f.runs; ++run) {
    RandomStream rng = root.Split(run);
    std::vector<GroupElement> inputs;
    inputs.reserve(f.n);
    for (int i = 0; i < f.n; ++i) {
      inputs.push_back(f.inputs.empty() ? UniformElement(rng, params->m)
                                        : GroupElement(f.inputs[i], params->m));
    }
    const Transcript t = Run(inputs, *params, rng);
    const GroupElement agg = Aggregate(t);
    const GroupElement expected = GroupSum(inputs, params->m);
    const bool ok = agg == expected;
    all_ok = all_ok && ok;
    j["runs"].push_back({{"run", run},
                         {"aggregate", agg.value()},
                         {"input_sum", expected.value()},
                         {"messages_per_user", t.MessagesPerUser()},
                         {"conserved", ok}});
    if (file) file << TranscriptToJson(t, seed, run).dump() << '\n';
  }
  j["all_conserved"] = all_ok;
  if (!f.out_path.empty()) j["out"] = f.out_path;
  Emit(j, format, out);
  return all_ok ? kExitOk : kExitViolation;
}

struct VerifyFlags {
  std::string target;
  int n = 0;
  int k = 0;
  uint64_t samples = 100000;
  uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  int shards = 1;
};

nlohmann::json CheckJson(const std::string& name, bool ok,
                         const std::string& detail) {
  return {{"name", name}, {"status", ok ? "holds" : "violated"},
          {"detail", detail}};
}

int FinishChecks(nlohmann::json& j) {
  bool all = true;
  for (const auto& c : j["checks"]) all = all && c["status"] != "violated";
  j["all_hold"] = all;
  return all ? kExitOk : kExitViolation;
}

int CmdVerify(const VerifyFlags& f, const ModulusFlags& mf,
              const std::string& format, std::ostream& out) {
  if (f.n < 1 || f.k < 1) throw UsageError("verify: --n and --k must be >= 1");
  if (f.shards < 1) throw UsageError("verify: --shards must be >= 1");
  const uint64_t seed = f.seed_opt->count() ? f.seed : FreshSeed();
  nlohmann::json j = BaseReport("verify " + f.target);
  j["parameters"] = {{"n", f.n}, {"k", f.k}};
  int code = kExitOk;

  if (f.target == "graph-dist") {
    if (f.samples < 1) throw UsageError("verify: --samples must be >= 1");
    const ComponentHistogram h =
        EstimateComponentDistribution(f.n, f.k, f.samples, seed, f.shards);
    const double hw = stats::HoeffdingHalfwidth(f.samples, 0.999);
    j["parameters"]["samples"] = f.samples;
    j["parameters"]["seed"] = seed;
    j["parameters"]["shards"] = f.shards;
    j["hoeffding_99_9_halfwidth"] = hw;
    j["lemma4_preconditions"] = f.n >= 19 && f.k >= 3;
    j["histogram"] = nlohmann::json::array();
    j["checks"] = nlohmann::json::array();
    for (const auto& [c, cnt] : h.counts) {
      const double bound = Lemma4ProbabilityBound(f.n, f.k, c).value;
      const double freq = h.Frequency(c);
      j["histogram"].push_back(
          {{"c", c}, {"count", cnt}, {"frequency", freq}, {"lemma4_bound", bound}});
      std::ostringstream d;
      d << "freq " << freq << " <= bound " << bound << " + " << hw;
      j["checks"].push_back(
          CheckJson("lemma4_distribution_c" + std::to_string(c),
                    freq <= bound + hw, d.str()));
    }
    code = FinishChecks(j);
  } else if (f.target == "graph-exp") {
    if (f.samples < 1) throw UsageError("verify: --samples must be >= 1");
    const uint64_t m = mf.Value();
    const MeanEstimate e =
        EstimateMPowerC(f.n, f.k, m, f.samples, seed, f.shards);
    j["parameters"]["m"] = m;
    j["parameters"]["samples"] = f.samples;
    j["parameters"]["seed"] = seed;
    j["parameters"]["shards"] = f.shards;
    j["m_power_c"] = {{"estimate", e.estimate},
                      {"ci99_halfwidth", e.ci99_halfwidth},
                      {"provenance", "monte-carlo"}};
    j["checks"] = nlohmann::json::array();
    const auto missed = ValidateParams(f.n, f.k, m);
    const bool lemma4 = std::none_of(missed.begin(), missed.end(), [](auto p) {
      return p != Precondition::kSigmaAtLeast1;
    });
    if (lemma4) {
      const double bound = ExpectationBound(f.n, f.k, m);
      j["expectation_bound"] = bound;
      std::ostringstream d;
      d << "CI lower " << e.estimate - e.ci99_halfwidth << " <= " << bound;
      j["checks"].push_back(CheckJson(
          "lemma4_expectation", e.estimate - e.ci99_halfwidth <= bound, d.str()));
    } else {
      j["expectation_bound"] = nullptr;
    }
    if (std::pow(std::tgamma(f.n + 1.0), f.k) <= kEnumerationBudget) {
      const double exact = ExactMPowerC(f.n, f.k, m);
      j["m_power_c_exact"] = exact;
      std::ostringstream d;
      d << "|" << e.estimate << " - " << exact << "| <= " << e.ci99_halfwidth;
      j["checks"].push_back(CheckJson(
          "ci_covers_exact", std::abs(e.estimate - exact) <= e.ci99_halfwidth,
          d.str()));
    } else {
      j["m_power_c_exact"] = nullptr;
    }
    code = FinishChecks(j);
  } else if (f.target == "tv-exact") {
    const uint64_t m = mf.Value();
    j["parameters"]["m"] = m;
    const Modulus mod(m);
    Rational tv, pv, pe, mc;
    try {
      tv = ExactAvgCaseTv(f.n, f.k, mod);
      pv = ExactCollisionProbability(f.n, f.k, mod, CollisionMode::kVVsV);
      pe = ExactCollisionProbability(f.n, f.k, mod, CollisionMode::kEEvent);
      mc = ExactMPowerCRational(f.n, f.k, m);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const Rational radicand = Lemma1Radicand(pv, f.n, f.k, m);
    BigInt mkn = 1;
    for (int i = 0; i < f.k * f.n; ++i) mkn *= m;
    const Rational graph_p = mc / Rational(mkn);
    auto num = [](const Rational& r) { return r.convert_to<double>(); };
    j["exact_avg_tv"] = {{"value", num(tv)}, {"rational", tv.str()}};
    j["collision_v"] = {{"value", num(pv)}, {"rational", pv.str()}};
    j["collision_e"] = {{"value", num(pe)}, {"rational", pe.str()}};
    j["m_power_c"] = {{"value", num(mc)}, {"rational", mc.str()}};
    j["lemma1_bound"] = radicand >= 0 ? nlohmann::json(std::sqrt(num(radicand)))
                                      : nlohmann::json(nullptr);
    j["checks"] = nlohmann::json::array({
        CheckJson("lemma2_exact_identity", pv == pe, pv.str() + " == " + pe.str()),
        CheckJson("lemma1_exact", radicand >= 0 && tv * tv <= radicand,
                  "TV^2 <= m^(kn-1) p - 1"),
        CheckJson("lemma3_exact", pv <= graph_p, "p <= E[m^C] m^-kn"),
    });
    code = FinishChecks(j);
  } else {  // chain
    const uint64_t m = mf.Value();
    const SecurityReport r = VerifyChain(f.n, f.k, m, f.samples, seed, f.shards);
    j.update(SecurityReportToJson(r));
    code = r.AllHold() ? kExitOk : kExitViolation;
  }
  Emit(j, format, out);
  return code;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> Flatten(
    const nlohmann::json& j, bool skip_histogram) {
  std::vector<std::pair<std::string, std::string>> out;
  FlattenInto(j, "", skip_histogram, out);
  return out;
}

std::string ToCsv(const nlohmann::json& report) {
  std::ostringstream out;
  if (report.contains("histogram")) {
    for (const auto& [path, value] : Flatten(report, true)) {
      out << "# " << path << '=' << value << '\n';
    }
    out << "c,count,frequency,lemma4_bound\n";
    for (const auto& row : report["histogram"]) {
      bool first = true;
      for (const char* col : kHistogramColumns) {
        if (!first) out << ',';
        out << Scalar(row[col]);
        first = false;
      }
      out << '\n';
    }
    return out.str();
  }
  out << "field,value\n";
  for (const auto& [path, value] : Flatten(report)) {
    out << CsvField(path) << ',' << CsvField(value) << '\n';
  }
  return out.str();
}

std::string ToTable(const nlohmann::json& report) {
  const auto rows = Flatten(report, true);
  size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  std::ostringstream out;
  for (const auto& [path, value] : rows) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << path << value
        << '\n';
  }
  if (report.contains("histogram")) {
    out << '\n';
    for (const char* col : kHistogramColumns) out << std::setw(24) << col;
    out << '\n';
    for (const auto& row : report["histogram"]) {
      for (const char* col : kHistogramColumns) {
        out << std::setw(24) << Scalar(row[col]);
      }
      out << '\n';
    }
  }
  return out.str();
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Split-and-mix secure summation: planning, simulation and "
               "security verification",
               "shufflesum"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  std::string format = "table";
  auto add_format = [&format](CLI::App* sub) {
    sub->add_option("--format", format, "table | json | csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
  };

  CLI::App* plan = app.add_subcommand("plan", "number of messages for a target sigma");
  double sigma = 0;
  uint64_t plan_n = 0;
  ModulusFlags plan_m;
  plan->add_option("--sigma", sigma, "security parameter (distance 2^-sigma)")
      ->required();
  plan->add_option("--n", plan_n, "number of users")->required();
  plan_m.Register(plan);
  add_format(plan);

  CLI::App* sim = app.add_subcommand("simulate", "run the protocol and check sums");
  SimulateFlags sf;
  ModulusFlags sim_m;
  sim->add_option("--n", sf.n, "number of users")->required();
  sim->add_option("--k", sf.k, "shuffled shares per user")->required();
  sim_m.Register(sim);
  sim->add_option("--variant", sf.variant, "plain | randomized")
      ->check(CLI::IsMember({"plain", "randomized"}));
  sf.seed_opt = sim->add_option("--seed", sf.seed, "RNG seed (generated if absent)");
  sim->add_option("--runs", sf.runs, "independent executions");
  sim->add_option("--inputs", sf.inputs, "fixed user inputs")->delimiter(',');
  sim->add_option("--out", sf.out_path, "write transcripts as JSON lines");
  add_format(sim);

  CLI::App* verify = app.add_subcommand("verify", "check the security bound chain");
  VerifyFlags vf;
  ModulusFlags ver_m;
  verify->add_option("target", vf.target, "graph-dist | graph-exp | tv-exact | chain")
      ->required()
      ->check(CLI::IsMember({"graph-dist", "graph-exp", "tv-exact", "chain"}));
  verify->add_option("--n", vf.n, "number of users / vertices")->required();
  verify->add_option("--k", vf.k, "shuffled shares / permutations")->required();
  ver_m.Register(verify);
  verify->add_option("--samples", vf.samples, "Monte Carlo samples");
  vf.seed_opt = verify->add_option("--seed", vf.seed, "RNG seed (generated if absent)");
  verify->add_option("--shards", vf.shards, "parallel sampling shards");
  add_format(verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (plan->parsed()) return CmdPlan(sigma, plan_n, plan_m, format, out);
    if (sim->parsed()) return CmdSimulate(sf, sim_m, format, out, err);
    return CmdVerify(vf, ver_m, format, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace shufflesum::cli
