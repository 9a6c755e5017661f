// Copyright 2026 The cbmsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver over the libcbmsim C interface.
//
// Exit codes: 0 success, 1 invalid input (parse, validation, decomposition),
// 2 runtime fault (I/O, simulation).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cbmsim/cbmsim.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitFault = 2;

struct ModelDeleter {
  void operator()(cbm_model* m) const { cbm_model_free(m); }
};
struct StrategyDeleter {
  void operator()(cbm_strategy* s) const { cbm_strategy_free(s); }
};
struct CampaignDeleter {
  void operator()(cbm_campaign* c) const { cbm_campaign_free(c); }
};
struct ReportDeleter {
  void operator()(cbm_report* r) const { cbm_report_free(r); }
};
using ModelPtr = std::unique_ptr<cbm_model, ModelDeleter>;
using StrategyPtr = std::unique_ptr<cbm_strategy, StrategyDeleter>;
using CampaignPtr = std::unique_ptr<cbm_campaign, CampaignDeleter>;
using ReportPtr = std::unique_ptr<cbm_report, ReportDeleter>;

/// Carries a C status out of nested helpers.
struct Failure {
  cbm_status status;
  std::string message;
};

int exit_code(cbm_status status) {
  switch (status) {
    case CBM_OK:
      return kExitOk;
    case CBM_ERR_PARSE:
    case CBM_ERR_INVALID_MODEL:
    case CBM_ERR_DECOMPOSE:
    case CBM_ERR_ARGUMENT:
    case CBM_ERR_MISMATCH:
      return kExitInvalid;
    default:
      return kExitFault;
  }
}

void check(cbm_status status) {
  if (status != CBM_OK) throw Failure{status, cbm_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  cbm_string_free(s);
  return out;
}

ModelPtr load_model(const std::string& path) {
  cbm_model* m = nullptr;
  check(cbm_model_load(path.c_str(), &m));
  return ModelPtr(m);
}

StrategyPtr load_strategy(const cbm_model* model, const std::string& path) {
  cbm_strategy* s = nullptr;
  if (path.empty()) {
    check(cbm_strategy_baseline(model, &s));
  } else {
    check(cbm_strategy_load(model, path.c_str(), &s));
  }
  return StrategyPtr(s);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw Failure{CBM_ERR_IO, "cannot write " + path.string()};
}

fs::path prepare_out(const std::string& dir) {
  fs::path out = dir.empty() ? fs::path("cbmsim-out") : fs::path(dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Failure{CBM_ERR_IO, "cannot create " + out.string() + ": " + ec.message()};
  return out;
}

struct RunFlags {
  std::optional<std::uint64_t> seed;
  int iterations = 0;
  int threads = 1;
  bool trace = false;

  cbm_run_options options() const {
    cbm_run_options o = cbm_run_options_default();
    if (seed) {
      o.use_model_seed = 0;
      o.seed = *seed;
    }
    o.iterations = iterations;
    o.threads = threads;
    o.trace = trace ? 1 : 0;
    return o;
  }
};

CampaignPtr run(const cbm_model* model, const cbm_strategy* strategy, const RunFlags& flags) {
  const cbm_run_options opts = flags.options();
  cbm_campaign* c = nullptr;
  check(cbm_campaign_run(model, strategy, &opts, &c));
  return CampaignPtr(c);
}

int cmd_validate(const std::string& system, const std::string& format) {
  ModelPtr model = load_model(system);
  size_t violations = 0;
  char* report = nullptr;
  check(cbm_model_validate(model.get(), format == "json" ? CBM_FORMAT_JSON : CBM_FORMAT_TEXT,
                           &violations, &report));
  const std::string text = take(report);
  if (format == "json") {
    std::cout << text;
  } else if (violations == 0) {
    std::cout << system << ": ok (" << cbm_model_component_count(model.get()) << " components)\n";
  } else {
    std::cerr << text;
  }
  return violations == 0 ? kExitOk : kExitInvalid;
}

int cmd_decompose(const std::string& system, const std::string& format, const std::string& out_dir) {
  ModelPtr model = load_model(system);
  char* table = nullptr;
  check(cbm_model_decompose(model.get(), format == "json" ? CBM_FORMAT_JSON : CBM_FORMAT_CSV, &table));
  const std::string text = take(table);
  std::cout << text;
  if (!out_dir.empty()) {
    write_file(prepare_out(out_dir) / (format == "json" ? "modules.json" : "modules.csv"), text);
  }
  return kExitOk;
}

int cmd_simulate(const std::string& system, const std::string& strategy_path, const RunFlags& flags,
                 const std::string& out_dir) {
  ModelPtr model = load_model(system);
  StrategyPtr strategy = load_strategy(model.get(), strategy_path);
  CampaignPtr campaign = run(model.get(), strategy.get(), flags);
  const fs::path out = prepare_out(out_dir);

  char* s = nullptr;
  check(cbm_campaign_records_csv(campaign.get(), &s));
  write_file(out / "records.csv", take(s));
  check(cbm_campaign_summary_json(campaign.get(), &s));
  write_file(out / "summary.json", take(s));
  check(cbm_campaign_manifest_json(campaign.get(), &s));
  write_file(out / "manifest.json", take(s));
  if (flags.trace) {
    check(cbm_campaign_trace_csv(campaign.get(), &s));
    write_file(out / "trace.csv", take(s));
  }
  std::cout << "wrote " << cbm_campaign_iterations(campaign.get()) << " iteration records to "
            << out.string() << "\n";
  return kExitOk;
}

int cmd_compare(const std::string& system, const std::string& baseline_path,
                const std::string& candidate_path, const RunFlags& flags, double min_failures,
                const std::string& out_dir) {
  ModelPtr model = load_model(system);
  StrategyPtr baseline = load_strategy(model.get(), baseline_path);
  StrategyPtr candidate = load_strategy(model.get(), candidate_path);
  // Both campaigns share the seed and stream layout (common random numbers).
  CampaignPtr base_run = run(model.get(), baseline.get(), flags);
  CampaignPtr cand_run = run(model.get(), candidate.get(), flags);

  cbm_report* r = nullptr;
  check(cbm_compare(base_run.get(), cand_run.get(), &r));
  ReportPtr report(r);
  const fs::path out = prepare_out(out_dir);

  char* s = nullptr;
  check(cbm_report_json(report.get(), &s));
  write_file(out / "report.json", take(s));
  check(cbm_report_plot_csv(report.get(), min_failures, &s));
  write_file(out / "plot.csv", take(s));
  check(cbm_report_manifest_json(report.get(), &s));
  write_file(out / "manifest.json", take(s));
  check(cbm_campaign_records_csv(base_run.get(), &s));
  write_file(out / "baseline_records.csv", take(s));
  check(cbm_campaign_records_csv(cand_run.get(), &s));
  write_file(out / "candidate_records.csv", take(s));

  char line[256];
  std::snprintf(line, sizeof line, "cost avoidance: %.2f\ninvestment: %.2f\n",
                cbm_report_cost_avoidance(report.get()), cbm_report_investment(report.get()));
  std::cout << line;
  double roi = 0.0;
  if (cbm_report_roi(report.get(), &roi)) {
    std::snprintf(line, sizeof line, "roi: %.4f\n", roi);
    std::cout << line;
  } else {
    std::cout << "roi: n/a (no investment)\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cbmsim: condition-based maintenance lifetime simulator and cost-benefit analyzer"};
  app.set_version_flag("--version", std::string(cbm_version()));
  app.require_subcommand(1);

  std::string system, strategy, baseline, candidate, out_dir, format = "text";
  RunFlags flags;
  std::uint64_t seed = 0;
  double min_failures = -1.0;

  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Seed (defaults to the scenario seed)");
    sub->add_option("--iterations", flags.iterations, "Iterations (defaults to the scenario N)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--threads", flags.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", out_dir, "Output directory");
  };

  auto* validate = app.add_subcommand("validate", "Check a system file against every invariant");
  validate->add_option("--system", system, "System JSON file")->required();
  validate->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "csv", "json"}));

  auto* decompose = app.add_subcommand("decompose", "Print the module table");
  decompose->add_option("--system", system, "System JSON file")->required();
  decompose->add_option("--format", format, "Table format")->check(CLI::IsMember({"text", "csv", "json"}));
  decompose->add_option("--out", out_dir, "Also write the table into this directory");

  auto* simulate = app.add_subcommand("simulate", "Run a lifetime campaign under one strategy");
  simulate->add_option("--system", system, "System JSON file")->required();
  simulate->add_option("--strategy", strategy, "Strategy JSON file (omit for corrective only)");
  simulate->add_flag("--trace", flags.trace, "Write per-mission events to trace.csv");
  add_run_flags(simulate);

  auto* compare = app.add_subcommand("compare", "Cost-benefit comparison of two strategies");
  compare->add_option("--system", system, "System JSON file")->required();
  compare->add_option("--baseline", baseline, "Baseline strategy (omit for corrective only)");
  compare->add_option("--candidate", candidate, "Candidate strategy")->required();
  compare->add_option("--min-failures", min_failures,
                      "Plot data: keep components with more mean CM events than this");
  add_run_flags(compare);

  CLI11_PARSE(app, argc, argv);
  for (auto* sub : {simulate, compare}) {
    if (sub->parsed() && sub->count("--seed")) flags.seed = seed;
  }

  try {
    if (validate->parsed()) return cmd_validate(system, format);
    if (decompose->parsed()) return cmd_decompose(system, format, out_dir);
    if (simulate->parsed()) return cmd_simulate(system, strategy, flags, out_dir);
    if (compare->parsed()) return cmd_compare(system, baseline, candidate, flags, min_failures, out_dir);
  } catch (const Failure& f) {
    std::cerr << "error (" << cbm_status_name(f.status) << "): " << f.message << "\n";
    return exit_code(f.status);
  }
  return kExitFault;
}
