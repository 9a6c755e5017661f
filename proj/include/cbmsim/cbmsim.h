/*
 * Copyright 2026 The cbmsim Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libcbmsim: load a system model, decompose it into modules,
 * run Monte Carlo lifetime campaigns under a monitoring strategy and compare
 * two campaigns in life-cycle cost terms.
 *
 * All objects are opaque handles released with the matching *_free call.
 * Functions return a cbm_status; on failure cbm_last_error() describes the
 * problem (per thread, valid until the next failing call on that thread).
 * Strings returned through char** are NUL-terminated, owned by the caller
 * and released with cbm_string_free.
 */

#ifndef CBMSIM_H
#define CBMSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CBMSIM_BUILDING)
#    define CBMSIM_API __declspec(dllexport)
#  else
#    define CBMSIM_API __declspec(dllimport)
#  endif
#else
#  define CBMSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cbm_status {
  CBM_OK = 0,
  CBM_ERR_ARGUMENT = 1,      /* null handle or out-of-range argument */
  CBM_ERR_IO = 2,            /* file could not be read */
  CBM_ERR_PARSE = 3,         /* document does not follow the schema */
  CBM_ERR_INVALID_MODEL = 4, /* model violates an invariant */
  CBM_ERR_DECOMPOSE = 5,     /* tree is not an OR-composition of modules */
  CBM_ERR_MISMATCH = 6,      /* campaigns from different models/sizes */
  CBM_ERR_RUNTIME = 7        /* internal fault during simulation */
} cbm_status;

typedef enum cbm_format { CBM_FORMAT_TEXT = 0, CBM_FORMAT_CSV = 1, CBM_FORMAT_JSON = 2 } cbm_format;

typedef struct cbm_model cbm_model;
typedef struct cbm_strategy cbm_strategy;
typedef struct cbm_campaign cbm_campaign;
typedef struct cbm_report cbm_report;

typedef struct cbm_run_options {
  uint64_t seed;
  int32_t use_model_seed; /* nonzero: ignore `seed`, use the scenario seed */
  int32_t iterations;     /* <= 0: use the scenario iteration count */
  int32_t threads;        /* <= 0: one worker */
  int32_t trace;          /* nonzero: record per-mission events */
} cbm_run_options;

CBMSIM_API const char* cbm_version(void);
CBMSIM_API const char* cbm_last_error(void);
CBMSIM_API const char* cbm_status_name(cbm_status status);
CBMSIM_API void cbm_string_free(char* s);

/* ---- models ---------------------------------------------------------- */

CBMSIM_API cbm_status cbm_model_parse(const char* document, size_t length, cbm_model** out);
CBMSIM_API cbm_status cbm_model_load(const char* path, cbm_model** out);
CBMSIM_API void cbm_model_free(cbm_model* model);

CBMSIM_API size_t cbm_model_component_count(const cbm_model* model);
/* 16 hex digits identifying the canonical model content. */
CBMSIM_API cbm_status cbm_model_hash(const cbm_model* model, char** out);
/* Canonical JSON form of the model. */
CBMSIM_API cbm_status cbm_model_serialize(const cbm_model* model, char** out);

/* Writes the violation count and a TEXT or JSON report. Always CBM_OK for a
 * valid handle; violations are data. */
CBMSIM_API cbm_status cbm_model_validate(const cbm_model* model, cbm_format format,
                                         size_t* violations, char** report);

/* Module table as CSV (module,members,branch) or JSON. */
CBMSIM_API cbm_status cbm_model_decompose(const cbm_model* model, cbm_format format, char** out);

/* ---- strategies ------------------------------------------------------ */

CBMSIM_API cbm_status cbm_strategy_parse(const cbm_model* model, const char* document,
                                         size_t length, const char* fallback_name,
                                         cbm_strategy** out);
CBMSIM_API cbm_status cbm_strategy_load(const cbm_model* model, const char* path,
                                        cbm_strategy** out);
/* No component monitored (corrective maintenance only). */
CBMSIM_API cbm_status cbm_strategy_baseline(const cbm_model* model, cbm_strategy** out);
CBMSIM_API double cbm_strategy_investment(const cbm_strategy* strategy);
CBMSIM_API void cbm_strategy_free(cbm_strategy* strategy);

/* ---- campaigns ------------------------------------------------------- */

CBMSIM_API cbm_run_options cbm_run_options_default(void);
CBMSIM_API cbm_status cbm_campaign_run(const cbm_model* model, const cbm_strategy* strategy,
                                       const cbm_run_options* options, cbm_campaign** out);
CBMSIM_API void cbm_campaign_free(cbm_campaign* campaign);

CBMSIM_API size_t cbm_campaign_iterations(const cbm_campaign* campaign);
/* Mean system failures per iteration attributed to module `module` (1-based). */
CBMSIM_API cbm_status cbm_campaign_module_failures(const cbm_campaign* campaign, size_t module,
                                                   double* mean);
CBMSIM_API cbm_status cbm_campaign_records_csv(const cbm_campaign* campaign, char** out);
CBMSIM_API cbm_status cbm_campaign_summary_json(const cbm_campaign* campaign, char** out);
CBMSIM_API cbm_status cbm_campaign_trace_csv(const cbm_campaign* campaign, char** out);
/* Manifest including wall-clock timestamps. */
CBMSIM_API cbm_status cbm_campaign_manifest_json(const cbm_campaign* campaign, char** out);

/* ---- cost-benefit comparison ---------------------------------------- */

CBMSIM_API cbm_status cbm_compare(const cbm_campaign* baseline, const cbm_campaign* candidate,
                                  cbm_report** out);
CBMSIM_API void cbm_report_free(cbm_report* report);

CBMSIM_API double cbm_report_cost_avoidance(const cbm_report* report);
CBMSIM_API double cbm_report_investment(const cbm_report* report);
/* Returns 0 and leaves *roi untouched when nothing was invested. */
CBMSIM_API int cbm_report_roi(const cbm_report* report, double* roi);
CBMSIM_API cbm_status cbm_report_json(const cbm_report* report, char** out);
/* min_cm < 0 keeps every component. */
CBMSIM_API cbm_status cbm_report_plot_csv(const cbm_report* report, double min_cm, char** out);
CBMSIM_API cbm_status cbm_report_manifest_json(const cbm_report* report, char** out);

#ifdef __cplusplus
}
#endif

#endif /* CBMSIM_H */
