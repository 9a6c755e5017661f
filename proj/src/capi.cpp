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

#include "cbmsim/cbmsim.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>

#include "cbmsim/analytics.hpp"
#include "cbmsim/model.hpp"
#include "cbmsim/modularizer.hpp"
#include "cbmsim/report.hpp"
#include "cbmsim/simulator.hpp"

using namespace cbmsim;

struct cbm_model {
  SystemModel model;
  std::string hash;
};

struct cbm_strategy {
  Strategy strategy;
  std::string hash;
  double investment = 0.0;
};

struct cbm_campaign {
  std::shared_ptr<const cbm_model> model;
  std::shared_ptr<const Simulator> sim;
  CampaignResult result;
  std::vector<std::vector<TraceEvent>> traces;
  RunManifest manifest;
};

struct cbm_report {
  CbaReport report;
  RunManifest manifest;
};

namespace {

thread_local std::string g_last_error;

cbm_status fail(cbm_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool read_file(const char* path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

// Maps exceptions thrown by the core onto status codes.
template <typename F>
cbm_status guarded(F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    return fail(CBM_ERR_PARSE, e.what());
  } catch (const DecompositionError& e) {
    return fail(CBM_ERR_DECOMPOSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CBM_ERR_RUNTIME, "out of memory");
  } catch (const std::invalid_argument& e) {
    return fail(CBM_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(CBM_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(CBM_ERR_RUNTIME, "unknown error");
  }
}

cbm_status check_valid(const SystemModel& model) {
  const auto report = validate(model);
  if (report.empty()) return CBM_OK;
  return fail(CBM_ERR_INVALID_MODEL, "model is not simulable:\n" + validation_text(report));
}

}  // namespace

extern "C" {

const char* cbm_version(void) { return kToolVersion.data(); }

const char* cbm_last_error(void) { return g_last_error.c_str(); }

const char* cbm_status_name(cbm_status status) {
  switch (status) {
    case CBM_OK:
      return "ok";
    case CBM_ERR_ARGUMENT:
      return "invalid argument";
    case CBM_ERR_IO:
      return "i/o error";
    case CBM_ERR_PARSE:
      return "parse error";
    case CBM_ERR_INVALID_MODEL:
      return "invalid model";
    case CBM_ERR_DECOMPOSE:
      return "decomposition error";
    case CBM_ERR_MISMATCH:
      return "mismatched campaigns";
    case CBM_ERR_RUNTIME:
      return "runtime fault";
  }
  return "unknown status";
}

void cbm_string_free(char* s) { std::free(s); }

cbm_status cbm_model_parse(const char* document, size_t length, cbm_model** out) {
  if (!document || !out) return fail(CBM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto m = std::make_unique<cbm_model>();
    m->model = parse_system(std::string_view(document, length));
    m->hash = content_hash(serialize_system(m->model));
    *out = m.release();
    return CBM_OK;
  });
}

cbm_status cbm_model_load(const char* path, cbm_model** out) {
  if (!path || !out) return fail(CBM_ERR_ARGUMENT, "null argument");
  std::string text;
  if (!read_file(path, text)) return fail(CBM_ERR_IO, std::string("cannot read ") + path);
  const cbm_status st = cbm_model_parse(text.data(), text.size(), out);
  if (st != CBM_OK) g_last_error = std::string(path) + ": " + g_last_error;
  return st;
}

void cbm_model_free(cbm_model* model) { delete model; }

size_t cbm_model_component_count(const cbm_model* model) { return model ? model->model.size() : 0; }

cbm_status cbm_model_hash(const cbm_model* model, char** out) {
  if (!model || !out) return fail(CBM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(model->hash);
    return CBM_OK;
  });
}

cbm_status cbm_model_serialize(const cbm_model* model, char** out) {
  if (!model || !out) return fail(CBM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(serialize_system(model->model) + "\n");
    return CBM_OK;
  });
}

cbm_status cbm_model_validate(const cbm_model* model, cbm_format format, size_t* violations,
                              char** report) {
  if (!model) return fail(CBM_ERR_ARGUMENT, "null model");
  return guarded([&] {
    const auto r = validate(model->model);
    if (violations) *violations = r.size();
    if (report) *report = dup(format == CBM_FORMAT_JSON ? validation_json(r) : validation_text(r));
    return CBM_OK;
  });
}

cbm_status cbm_model_decompose(const cbm_model* model, cbm_format format, char** out) {
  if (!model || !out) return fail(CBM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const auto modules = decompose(model->model);
    *out = dup(format == CBM_FORMAT_JSON ? modules_json(modules, model->model.size())
                                         : modules_csv(modules));
    return CBM_OK;
  });
}

cbm_status cbm_strategy_parse(const cbm_model* model, const char* document, size_t length,
                              const char* fallback_name, cbm_strategy** out) {
  if (!model || !document || !out) return fail(CBM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto s = std::make_unique<cbm_strategy>();
    s->strategy = parse_strategy(std::string_view(document, length), model->model,
                                 fallback_name ? fallback_name : "strategy");
    s->hash = content_hash(serialize_strategy(s->strategy));
    s->investment = s->strategy.investment(model->model);
    *out = s.release();
    return CBM_OK;
  });
}

cbm_status cbm_strategy_load(const cbm_model* model, const char* path, cbm_strategy** out) {
  if (!model || !path || !out) return fail(CBM_ERR_ARGUMENT, "null argument");
  std::string text;
  if (!read_file(path, text)) return fail(CBM_ERR_IO, std::string("cannot read ") + path);
  std::string stem = path;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem.erase(0, slash + 1);
  if (auto dot = stem.rfind('.'); dot != std::string::npos) stem.erase(dot);
  const cbm_status st = cbm_strategy_parse(model, text.data(), text.size(), stem.c_str(), out);
  if (st != CBM_OK) g_last_error = std::string(path) + ": " + g_last_error;
  return st;
}

cbm_status cbm_strategy_baseline(const cbm_model* model, cbm_strategy** out) {
  if (!model || !out) return fail(CBM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto s = std::make_unique<cbm_strategy>();
    s->strategy = Strategy::unmonitored(model->model.size());
    s->hash = content_hash(serialize_strategy(s->strategy));
    *out = s.release();
    return CBM_OK;
  });
}

double cbm_strategy_investment(const cbm_strategy* strategy) {
  return strategy ? strategy->investment : 0.0;
}

void cbm_strategy_free(cbm_strategy* strategy) { delete strategy; }

cbm_run_options cbm_run_options_default(void) {
  cbm_run_options o{};
  o.use_model_seed = 1;
  o.threads = 1;
  return o;
}

cbm_status cbm_campaign_run(const cbm_model* model, const cbm_strategy* strategy,
                            const cbm_run_options* options, cbm_campaign** out) {
  if (!model || !strategy || !out) return fail(CBM_ERR_ARGUMENT, "null argument");
  if (strategy->strategy.p_cms.size() != model->model.size()) {
    return fail(CBM_ERR_ARGUMENT, "strategy was built for a different model");
  }
  if (const cbm_status st = check_valid(model->model); st != CBM_OK) return st;
  const cbm_run_options opts = options ? *options : cbm_run_options_default();
  return guarded([&] {
    auto c = std::make_unique<cbm_campaign>();
    c->model = std::make_shared<const cbm_model>(*model);
    c->sim = std::make_shared<const Simulator>(model->model);

    CampaignOptions co;
    co.seed = opts.use_model_seed ? model->model.scenario.seed : opts.seed;
    co.iterations = opts.iterations > 0 ? opts.iterations : model->model.scenario.iterations;
    co.threads = opts.threads > 0 ? opts.threads : 1;
    co.trace = opts.trace != 0;

    c->manifest.model_hash = model->hash;
    c->manifest.strategy_hash = strategy->hash;
    c->manifest.scenario = model->model.scenario;
    c->manifest.seed = co.seed;
    c->manifest.iterations = co.iterations;
    c->manifest.started_at = utc_now();
    Campaign run = run_campaign(*c->sim, strategy->strategy, co);
    c->manifest.finished_at = utc_now();

    c->result.model_hash = model->hash;
    c->result.strategy = strategy->strategy;
    c->result.records = std::move(run.records);
    c->traces = std::move(run.traces);
    *out = c.release();
    return CBM_OK;
  });
}

void cbm_campaign_free(cbm_campaign* campaign) { delete campaign; }

size_t cbm_campaign_iterations(const cbm_campaign* campaign) {
  return campaign ? campaign->result.records.size() : 0;
}

cbm_status cbm_campaign_module_failures(const cbm_campaign* campaign, size_t module, double* mean) {
  if (!campaign || !mean) return fail(CBM_ERR_ARGUMENT, "null argument");
  const auto& recs = campaign->result.records;
  if (module < 1 || recs.empty() || module > recs.front().module_failures.size()) {
    return fail(CBM_ERR_ARGUMENT, "module index out of range");
  }
  double sum = 0.0;
  for (const auto& r : recs) sum += r.module_failures[module - 1];
  *mean = sum / static_cast<double>(recs.size());
  return CBM_OK;
}

cbm_status cbm_campaign_records_csv(const cbm_campaign* campaign, char** out) {
  if (!campaign || !out) return fail(CBM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(records_csv(campaign->result.records, campaign->model->model, campaign->manifest));
    return CBM_OK;
  });
}

cbm_status cbm_campaign_summary_json(const cbm_campaign* campaign, char** out) {
  if (!campaign || !out) return fail(CBM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const auto stats = summarize(campaign->result.records);
    *out = dup(summary_json(stats, campaign->model->model, campaign->sim->modules(),
                            campaign->manifest));
    return CBM_OK;
  });
}

cbm_status cbm_campaign_trace_csv(const cbm_campaign* campaign, char** out) {
  if (!campaign || !out) return fail(CBM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(trace_csv(campaign->traces));
    return CBM_OK;
  });
}

cbm_status cbm_campaign_manifest_json(const cbm_campaign* campaign, char** out) {
  if (!campaign || !out) return fail(CBM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(manifest_json(campaign->manifest, true));
    return CBM_OK;
  });
}

cbm_status cbm_compare(const cbm_campaign* baseline, const cbm_campaign* candidate,
                       cbm_report** out) {
  if (!baseline || !candidate || !out) return fail(CBM_ERR_ARGUMENT, "null argument");
  if (baseline->result.model_hash != candidate->result.model_hash) {
    return fail(CBM_ERR_MISMATCH, "campaigns were run on different models (" +
                                      baseline->result.model_hash + " vs " +
                                      candidate->result.model_hash + ")");
  }
  if (baseline->result.records.size() != candidate->result.records.size()) {
    return fail(CBM_ERR_MISMATCH, "campaigns have different iteration counts");
  }
  return guarded([&] {
    auto r = std::make_unique<cbm_report>();
    r->report = compare_strategies(baseline->result, candidate->result, baseline->model->model);
    r->manifest = baseline->manifest;
    r->manifest.strategy_hash.clear();
    r->manifest.baseline_hash = baseline->manifest.strategy_hash;
    r->manifest.candidate_hash = candidate->manifest.strategy_hash;
    r->manifest.finished_at = candidate->manifest.finished_at;
    *out = r.release();
    return CBM_OK;
  });
}

void cbm_report_free(cbm_report* report) { delete report; }

double cbm_report_cost_avoidance(const cbm_report* report) {
  return report ? report->report.cost_avoidance : 0.0;
}

double cbm_report_investment(const cbm_report* report) {
  return report ? report->report.total_investment : 0.0;
}

int cbm_report_roi(const cbm_report* report, double* roi) {
  if (!report || !report->report.roi) return 0;
  if (roi) *roi = *report->report.roi;
  return 1;
}

cbm_status cbm_report_json(const cbm_report* report, char** out) {
  if (!report || !out) return fail(CBM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(report_json(report->report, report->manifest));
    return CBM_OK;
  });
}

cbm_status cbm_report_plot_csv(const cbm_report* report, double min_cm, char** out) {
  if (!report || !out) return fail(CBM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(plot_csv(report->report, min_cm, report->manifest));
    return CBM_OK;
  });
}

cbm_status cbm_report_manifest_json(const cbm_report* report, char** out) {
  if (!report || !out) return fail(CBM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(manifest_json(report->manifest, true));
    return CBM_OK;
  });
}

}  // extern "C"
