// Command-line front end. Talks to the library only through its C interface.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "tncount/tncount.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kTimeout = 2, kMemoryCap = 3, kParse = 4 };

int exit_code(tnc_status s) {
  switch (s) {
    case TNC_OK: return kOk;
    case TNC_TIMEOUT: return kTimeout;
    case TNC_MEMORY_CAP: return kMemoryCap;
    case TNC_PARSE: return kParse;
    default: return kUsage;
  }
}

int fail(tnc_status s) {
  std::fprintf(stderr, "tncount: %s: %s\n", tnc_status_name(s), tnc_last_error());
  return exit_code(s);
}

struct ConfigDeleter {
  void operator()(tnc_config* c) const { tnc_config_free(c); }
};
struct ReportDeleter {
  void operator()(tnc_report* r) const { tnc_report_free(r); }
};
struct FormulaDeleter {
  void operator()(tnc_formula* f) const { tnc_formula_free(f); }
};

bool write_file(const std::string& path, const char* text) {
  std::ofstream out(path);
  out << text;
  if (!out) {
    std::fprintf(stderr, "tncount: cannot write %s\n", path.c_str());
    return false;
  }
  return true;
}

const char* method_name(tnc_method m) {
  switch (m) {
    case TNC_GREEDY: return "greedy";
    case TNC_LG: return "lg";
    case TNC_FT: return "ft";
    case TNC_PORTFOLIO: return "portfolio";
  }
  return "?";
}

struct CountArgs {
  std::string file;
  std::string method = "lg";
  std::string td = "min-fill,min-degree";
  std::uint64_t seed = 0;
  double timeout = 600.0;
  std::uint64_t mem_cap = std::uint64_t{1} << 30;
  std::string import_td, emit_tree, emit_plan;
  unsigned td_restarts = 0;
  double seconds_per_flop = 1e-10;
  std::string weights = "file";
};

int run_count(const CountArgs& a) {
  std::unique_ptr<tnc_config, ConfigDeleter> cfg(tnc_config_new());
  if (!cfg) return fail(TNC_INTERNAL);
  tnc_status s;
  if ((s = tnc_config_set_method_name(cfg.get(), a.method.c_str())) != TNC_OK) return fail(s);
  if ((s = tnc_config_set_td_strategies(cfg.get(), a.td.c_str())) != TNC_OK) return fail(s);
  if ((s = tnc_config_set_seed(cfg.get(), a.seed)) != TNC_OK) return fail(s);
  if ((s = tnc_config_set_timeout(cfg.get(), a.timeout)) != TNC_OK) return fail(s);
  if ((s = tnc_config_set_mem_cap(cfg.get(), a.mem_cap)) != TNC_OK) return fail(s);
  if ((s = tnc_config_set_td_restarts(cfg.get(), a.td_restarts)) != TNC_OK) return fail(s);
  if ((s = tnc_config_set_seconds_per_flop(cfg.get(), a.seconds_per_flop)) != TNC_OK) return fail(s);
  if ((s = tnc_config_set_weight_mode(cfg.get(), a.weights == "unit" ? TNC_WEIGHTS_UNIT : TNC_WEIGHTS_FILE)) != TNC_OK)
    return fail(s);
  if (!a.import_td.empty() && (s = tnc_config_set_import_td(cfg.get(), a.import_td.c_str())) != TNC_OK) return fail(s);

  tnc_report* raw = nullptr;
  s = tnc_count_file(cfg.get(), a.file.c_str(), &raw);
  std::unique_ptr<tnc_report, ReportDeleter> rep(raw);
  if (!rep) return fail(s);

  std::printf("c method %s\n", method_name(tnc_report_method(rep.get())));
  std::printf("c source_width %d\n", tnc_report_source_width(rep.get()));
  std::printf("c max_rank %d\n", tnc_report_max_rank(rep.get()));
  std::printf("c peak_rank %d\n", tnc_report_peak_rank(rep.get()));
  std::printf("c estimated_seconds %.6g\n", tnc_report_estimated_seconds(rep.get()));
  std::printf("c parse_seconds %.6f\n", tnc_report_parse_seconds(rep.get()));
  std::printf("c plan_seconds %.6f\n", tnc_report_plan_seconds(rep.get()));
  std::printf("c contract_seconds %.6f\n", tnc_report_contract_seconds(rep.get()));
  std::printf("c total_seconds %.6f\n", tnc_report_total_seconds(rep.get()));

  bool wrote = true;
  if (*tnc_report_tree(rep.get())) {
    if (!a.emit_tree.empty()) wrote = write_file(a.emit_tree, tnc_report_tree(rep.get())) && wrote;
    if (!a.emit_plan.empty()) wrote = write_file(a.emit_plan, tnc_report_plan(rep.get())) && wrote;
  }
  if (s != TNC_OK) {
    std::printf("c status %s\n", tnc_status_name(s));
    std::printf("c reason %s\n", tnc_report_message(rep.get()));
    std::fflush(stdout);
    return exit_code(s);
  }
  std::printf("s wmc %.17g\n", tnc_report_wmc(rep.get()));
  return wrote ? kOk : kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tncount: exact weighted model counting by tensor-network contraction"};
  app.require_subcommand(1);

  CountArgs ca;
  auto* count = app.add_subcommand("count", "Count the models of a DIMACS CNF file");
  count->add_option("file", ca.file, "DIMACS CNF input")->required();
  count->add_option("--method", ca.method, "greedy, lg, ft or portfolio")
      ->check(CLI::IsMember({"greedy", "lg", "ft", "portfolio"}))
      ->capture_default_str();
  count->add_option("--td", ca.td, "Decomposition heuristics, comma separated")->capture_default_str();
  count->add_option("--seed", ca.seed, "Random seed")->capture_default_str();
  count->add_option("--timeout", ca.timeout, "Wall-clock limit in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  count->add_option("--mem-cap", ca.mem_cap, "Largest tensor allowed, in entries")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  count->add_option("--import-td", ca.import_td, "PACE .td file to plan from");
  count->add_option("--emit-tree", ca.emit_tree, "Write the contraction tree here");
  count->add_option("--emit-plan", ca.emit_plan, "Write the plan summary here");
  count->add_option("--td-restarts", ca.td_restarts, "Fixed number of decomposition restarts (repeatable runs)");
  count->add_option("--seconds-per-flop", ca.seconds_per_flop, "Cost model constant")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  count->add_option("--weights", ca.weights, "Use the file's weights or unit weights")
      ->check(CLI::IsMember({"file", "unit"}))
      ->capture_default_str();

  std::string kind;
  int gen_n = 0;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "Generate a benchmark formula on stdout");
  gen->add_option("kind", kind, "Benchmark family")->required()->check(CLI::IsMember({"cubic-vc"}));
  gen->add_option("--n", gen_n, "Number of graph vertices (even, at least 4)")->required();
  gen->add_option("--seed", gen_seed, "Random seed")->capture_default_str();

  std::string inspect_file;
  double budget = 2.0;
  std::uint64_t inspect_seed = 0;
  auto* insp = app.add_subcommand("inspect", "Report structural statistics of a formula");
  insp->add_option("file", inspect_file, "DIMACS CNF input")->required();
  insp->add_option("--budget", budget, "Seconds spent searching for decompositions")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  insp->add_option("--seed", inspect_seed, "Random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (*count) return run_count(ca);

  if (*gen) {
    char* text = nullptr;
    tnc_status s = tnc_gen_cubic_vc(gen_n, gen_seed, &text);
    if (s != TNC_OK) return fail(s);
    std::fputs(text, stdout);
    tnc_string_free(text);
    return kOk;
  }

  tnc_formula* raw = nullptr;
  tnc_status s = tnc_formula_parse_file(inspect_file.c_str(), &raw);
  std::unique_ptr<tnc_formula, FormulaDeleter> f(raw);
  if (s != TNC_OK) return fail(s);
  char* text = nullptr;
  s = tnc_inspect(f.get(), budget, inspect_seed, &text);
  if (s != TNC_OK) return fail(s);
  std::fputs(text, stdout);
  tnc_string_free(text);
  return kOk;
}
