/*
 * tncount C interface: exact weighted model counting by tensor-network
 * contraction.
 *
 * All objects are opaque and owned by the caller, who releases them with the
 * matching *_free function. Functions return a tnc_status; on failure a
 * description is available from tnc_last_error() on the same thread until
 * the next call into the library. Strings returned through char** out
 * parameters are released with tnc_string_free.
 */
#ifndef TNCOUNT_TNCOUNT_H
#define TNCOUNT_TNCOUNT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TNCOUNT_BUILDING)
#    define TNC_API __declspec(dllexport)
#  else
#    define TNC_API __declspec(dllimport)
#  endif
#else
#  define TNC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tnc_status {
  TNC_OK = 0,
  TNC_INVALID_ARGUMENT = 1,
  TNC_TIMEOUT = 2,
  TNC_MEMORY_CAP = 3,
  TNC_PARSE = 4,
  TNC_IO = 5,
  TNC_PLANNING = 6,
  TNC_INTERNAL = 7
} tnc_status;

typedef enum tnc_method { TNC_GREEDY = 0, TNC_LG = 1, TNC_FT = 2, TNC_PORTFOLIO = 3 } tnc_method;

typedef enum tnc_weight_mode { TNC_WEIGHTS_FILE = 0, TNC_WEIGHTS_UNIT = 1 } tnc_weight_mode;

typedef struct tnc_formula tnc_formula;
typedef struct tnc_config tnc_config;
typedef struct tnc_report tnc_report;

/* Message for the most recent failure on this thread ("" if none). */
TNC_API const char* tnc_last_error(void);
TNC_API const char* tnc_status_name(tnc_status status);
TNC_API void tnc_string_free(char* s);

/* Formulas (DIMACS CNF, optional weight lines). */
TNC_API tnc_status tnc_formula_parse_file(const char* path, tnc_formula** out);
TNC_API tnc_status tnc_formula_parse_string(const char* text, tnc_formula** out);
TNC_API void tnc_formula_free(tnc_formula* f);
TNC_API int tnc_formula_num_vars(const tnc_formula* f);
TNC_API int tnc_formula_num_clauses(const tnc_formula* f);
/* Exhaustive enumeration; refuses formulas with more than 30 variables. */
TNC_API tnc_status tnc_brute_force_wmc(const tnc_formula* f, double* out);

/* Run configuration; defaults: lg, min-fill and min-degree, seed 0,
 * 600 s timeout, 2^30-entry memory cap. */
TNC_API tnc_config* tnc_config_new(void);
TNC_API void tnc_config_free(tnc_config* c);
TNC_API tnc_status tnc_config_set_method(tnc_config* c, tnc_method m);
TNC_API tnc_status tnc_config_set_method_name(tnc_config* c, const char* name);
/* Comma-separated list, e.g. "min-fill,min-degree". */
TNC_API tnc_status tnc_config_set_td_strategies(tnc_config* c, const char* csv);
TNC_API tnc_status tnc_config_set_seed(tnc_config* c, uint64_t seed);
TNC_API tnc_status tnc_config_set_timeout(tnc_config* c, double seconds);
TNC_API tnc_status tnc_config_set_mem_cap(tnc_config* c, uint64_t entries);
/* PACE .td file used instead of the built-in heuristics; NULL clears it. */
TNC_API tnc_status tnc_config_set_import_td(tnc_config* c, const char* path);
TNC_API tnc_status tnc_config_set_seconds_per_flop(tnc_config* c, double seconds);
/* Nonzero makes planning repeatable: exactly this many restarts. */
TNC_API tnc_status tnc_config_set_td_restarts(tnc_config* c, unsigned restarts);
TNC_API tnc_status tnc_config_set_weight_mode(tnc_config* c, tnc_weight_mode mode);

/* Counting. On TNC_OK, TNC_TIMEOUT and TNC_MEMORY_CAP a report is stored in
 * *out describing how far the run got; otherwise *out is NULL. */
TNC_API tnc_status tnc_count_file(const tnc_config* c, const char* path, tnc_report** out);
TNC_API tnc_status tnc_count(const tnc_config* c, const tnc_formula* f, tnc_report** out);

TNC_API void tnc_report_free(tnc_report* r);
TNC_API tnc_status tnc_report_status(const tnc_report* r);
TNC_API double tnc_report_wmc(const tnc_report* r);
TNC_API tnc_method tnc_report_method(const tnc_report* r);
TNC_API int tnc_report_source_width(const tnc_report* r);
TNC_API int tnc_report_max_rank(const tnc_report* r);
TNC_API int tnc_report_peak_rank(const tnc_report* r);
TNC_API double tnc_report_estimated_seconds(const tnc_report* r);
TNC_API double tnc_report_parse_seconds(const tnc_report* r);
TNC_API double tnc_report_plan_seconds(const tnc_report* r);
TNC_API double tnc_report_contract_seconds(const tnc_report* r);
TNC_API double tnc_report_total_seconds(const tnc_report* r);
/* Borrowed strings, valid until the report is freed. */
TNC_API const char* tnc_report_tree(const tnc_report* r);
TNC_API const char* tnc_report_plan(const tnc_report* r);
TNC_API const char* tnc_report_message(const tnc_report* r);

/* Utilities. */
TNC_API tnc_status tnc_gen_cubic_vc(int n, uint64_t seed, char** out);
TNC_API tnc_status tnc_inspect(const tnc_formula* f, double budget_seconds, uint64_t seed, char** out);

#ifdef __cplusplus
}
#endif

#endif
