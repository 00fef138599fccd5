#include "tncount/tncount.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "tncount/driver.hpp"
#include "tncount/errors.hpp"

struct tnc_formula {
  tnc::CnfFormula f;
};

struct tnc_config {
  tnc::RunConfig c;
};

struct tnc_report {
  tnc::RunReport r;
};

namespace {

thread_local std::string last_error;

template <class F>
tnc_status guard(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const tnc::ParseError& e) {
    last_error = e.what();
    return TNC_PARSE;
  } catch (const tnc::IoError& e) {
    last_error = e.what();
    return TNC_IO;
  } catch (const tnc::InvalidArgument& e) {
    last_error = e.what();
    return TNC_INVALID_ARGUMENT;
  } catch (const tnc::TimeoutError& e) {
    last_error = e.what();
    return TNC_TIMEOUT;
  } catch (const tnc::MemoryCapError& e) {
    last_error = e.what();
    return TNC_MEMORY_CAP;
  } catch (const tnc::Error& e) {
    last_error = e.what();
    return TNC_PLANNING;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TNC_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TNC_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return TNC_INTERNAL;
  }
}

tnc_status invalid(const char* what) {
  last_error = what;
  return TNC_INVALID_ARGUMENT;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

tnc_status finish_report(tnc::RunReport r, tnc_report** out) {
  tnc_status s = TNC_OK;
  if (r.status == tnc::RunStatus::timeout) s = TNC_TIMEOUT;
  if (r.status == tnc::RunStatus::memory_cap) s = TNC_MEMORY_CAP;
  if (s != TNC_OK) last_error = r.message;
  *out = new tnc_report{std::move(r)};
  return s;
}

}  // namespace

extern "C" {

const char* tnc_last_error(void) { return last_error.c_str(); }

const char* tnc_status_name(tnc_status status) {
  switch (status) {
    case TNC_OK: return "ok";
    case TNC_INVALID_ARGUMENT: return "invalid argument";
    case TNC_TIMEOUT: return "timeout";
    case TNC_MEMORY_CAP: return "memory cap";
    case TNC_PARSE: return "parse error";
    case TNC_IO: return "i/o error";
    case TNC_PLANNING: return "planning failed";
    case TNC_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void tnc_string_free(char* s) { std::free(s); }

tnc_status tnc_formula_parse_file(const char* path, tnc_formula** out) {
  if (!path || !out) return invalid("null argument");
  *out = nullptr;
  return guard([&] {
    *out = new tnc_formula{tnc::parse_dimacs_file(path)};
    return TNC_OK;
  });
}

tnc_status tnc_formula_parse_string(const char* text, tnc_formula** out) {
  if (!text || !out) return invalid("null argument");
  *out = nullptr;
  return guard([&] {
    *out = new tnc_formula{tnc::parse_dimacs(std::string_view(text))};
    return TNC_OK;
  });
}

void tnc_formula_free(tnc_formula* f) { delete f; }

int tnc_formula_num_vars(const tnc_formula* f) { return f ? f->f.num_vars() : -1; }

int tnc_formula_num_clauses(const tnc_formula* f) { return f ? static_cast<int>(f->f.num_clauses()) : -1; }

tnc_status tnc_brute_force_wmc(const tnc_formula* f, double* out) {
  if (!f || !out) return invalid("null argument");
  return guard([&] {
    *out = tnc::brute_force_wmc(f->f);
    return TNC_OK;
  });
}

tnc_config* tnc_config_new(void) { return new (std::nothrow) tnc_config{}; }

void tnc_config_free(tnc_config* c) { delete c; }

tnc_status tnc_config_set_method(tnc_config* c, tnc_method m) {
  if (!c) return invalid("null config");
  switch (m) {
    case TNC_GREEDY: c->c.method = tnc::Method::greedy; break;
    case TNC_LG: c->c.method = tnc::Method::lg; break;
    case TNC_FT: c->c.method = tnc::Method::ft; break;
    case TNC_PORTFOLIO: c->c.method = tnc::Method::portfolio; break;
    default: return invalid("unknown method");
  }
  return TNC_OK;
}

tnc_status tnc_config_set_method_name(tnc_config* c, const char* name) {
  if (!c || !name) return invalid("null argument");
  auto m = tnc::method_from_string(name);
  if (!m) return invalid("unknown method; expected greedy, lg, ft or portfolio");
  c->c.method = *m;
  return TNC_OK;
}

tnc_status tnc_config_set_td_strategies(tnc_config* c, const char* csv) {
  if (!c || !csv) return invalid("null argument");
  std::vector<tnc::TdStrategy> list;
  std::stringstream ss(csv);
  for (std::string item; std::getline(ss, item, ',');) {
    auto s = tnc::td_strategy_from_string(item);
    if (!s) return invalid("unknown decomposition strategy; expected min-fill or min-degree");
    list.push_back(*s);
  }
  if (list.empty()) return invalid("empty strategy list");
  c->c.td_strategies = std::move(list);
  return TNC_OK;
}

tnc_status tnc_config_set_seed(tnc_config* c, uint64_t seed) {
  if (!c) return invalid("null config");
  c->c.seed = seed;
  return TNC_OK;
}

tnc_status tnc_config_set_timeout(tnc_config* c, double seconds) {
  if (!c) return invalid("null config");
  if (!(seconds > 0)) return invalid("timeout must be positive");
  c->c.timeout_seconds = seconds;
  return TNC_OK;
}

tnc_status tnc_config_set_mem_cap(tnc_config* c, uint64_t entries) {
  if (!c) return invalid("null config");
  if (entries == 0) return invalid("memory cap must be positive");
  c->c.mem_cap_entries = static_cast<std::size_t>(entries);
  return TNC_OK;
}

tnc_status tnc_config_set_import_td(tnc_config* c, const char* path) {
  if (!c) return invalid("null config");
  c->c.import_td = path ? path : "";
  return TNC_OK;
}

tnc_status tnc_config_set_seconds_per_flop(tnc_config* c, double seconds) {
  if (!c) return invalid("null config");
  if (!(seconds > 0)) return invalid("seconds per flop must be positive");
  c->c.seconds_per_flop = seconds;
  return TNC_OK;
}

tnc_status tnc_config_set_td_restarts(tnc_config* c, unsigned restarts) {
  if (!c) return invalid("null config");
  c->c.td_restarts = restarts;
  return TNC_OK;
}

tnc_status tnc_config_set_weight_mode(tnc_config* c, tnc_weight_mode mode) {
  if (!c) return invalid("null config");
  if (mode != TNC_WEIGHTS_FILE && mode != TNC_WEIGHTS_UNIT) return invalid("unknown weight mode");
  c->c.weights = mode == TNC_WEIGHTS_UNIT ? tnc::WeightMode::unit : tnc::WeightMode::file;
  return TNC_OK;
}

tnc_status tnc_count_file(const tnc_config* c, const char* path, tnc_report** out) {
  if (!c || !path || !out) return invalid("null argument");
  *out = nullptr;
  return guard([&] { return finish_report(tnc::count_file(c->c, path), out); });
}

tnc_status tnc_count(const tnc_config* c, const tnc_formula* f, tnc_report** out) {
  if (!c || !f || !out) return invalid("null argument");
  *out = nullptr;
  return guard([&] { return finish_report(tnc::count(c->c, f->f), out); });
}

void tnc_report_free(tnc_report* r) { delete r; }

tnc_status tnc_report_status(const tnc_report* r) {
  if (!r) return TNC_INVALID_ARGUMENT;
  switch (r->r.status) {
    case tnc::RunStatus::ok: return TNC_OK;
    case tnc::RunStatus::timeout: return TNC_TIMEOUT;
    case tnc::RunStatus::memory_cap: return TNC_MEMORY_CAP;
  }
  return TNC_INTERNAL;
}

double tnc_report_wmc(const tnc_report* r) { return r ? r->r.wmc : 0.0; }

tnc_method tnc_report_method(const tnc_report* r) {
  if (!r) return TNC_GREEDY;
  switch (r->r.method) {
    case tnc::Method::greedy: return TNC_GREEDY;
    case tnc::Method::lg: return TNC_LG;
    case tnc::Method::ft: return TNC_FT;
    case tnc::Method::portfolio: return TNC_PORTFOLIO;
  }
  return TNC_GREEDY;
}

int tnc_report_source_width(const tnc_report* r) { return r ? r->r.source_width : -1; }
int tnc_report_max_rank(const tnc_report* r) { return r ? r->r.max_rank : -1; }
int tnc_report_peak_rank(const tnc_report* r) { return r ? r->r.peak_rank : -1; }
double tnc_report_estimated_seconds(const tnc_report* r) { return r ? r->r.estimated_seconds : 0.0; }
double tnc_report_parse_seconds(const tnc_report* r) { return r ? r->r.parse_seconds : 0.0; }
double tnc_report_plan_seconds(const tnc_report* r) { return r ? r->r.plan_seconds : 0.0; }
double tnc_report_contract_seconds(const tnc_report* r) { return r ? r->r.contract_seconds : 0.0; }
double tnc_report_total_seconds(const tnc_report* r) { return r ? r->r.total_seconds : 0.0; }
const char* tnc_report_tree(const tnc_report* r) { return r ? r->r.tree.c_str() : ""; }
const char* tnc_report_plan(const tnc_report* r) { return r ? r->r.plan.c_str() : ""; }
const char* tnc_report_message(const tnc_report* r) { return r ? r->r.message.c_str() : ""; }

tnc_status tnc_gen_cubic_vc(int n, uint64_t seed, char** out) {
  if (!out) return invalid("null argument");
  *out = nullptr;
  return guard([&] {
    *out = dup(tnc::gen_cubic_vc(n, seed));
    return TNC_OK;
  });
}

tnc_status tnc_inspect(const tnc_formula* f, double budget_seconds, uint64_t seed, char** out) {
  if (!f || !out) return invalid("null argument");
  *out = nullptr;
  return guard([&] {
    *out = dup(tnc::inspect(f->f, budget_seconds, seed));
    return TNC_OK;
  });
}

}  // extern "C"
