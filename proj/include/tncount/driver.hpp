#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "tncount/contraction.hpp"
#include "tncount/decomp.hpp"
#include "tncount/formula.hpp"
#include "tncount/methods.hpp"

namespace tnc {

enum class WeightMode { file, unit };

struct RunConfig {
  Method method = Method::lg;
  std::vector<TdStrategy> td_strategies{TdStrategy::min_fill, TdStrategy::min_degree};
  std::uint64_t seed = 0;
  double timeout_seconds = 600.0;
  std::size_t mem_cap_entries = kDefaultMemCapEntries;
  /// PACE `.td` file to plan from instead of running the heuristics. For lg
  /// it decomposes the line graph of the structure graph, for ft the
  /// structure graph itself (vertex i+1 is tensor i, the last is free).
  std::string import_td;
  double seconds_per_flop = kDefaultSecondsPerFlop;
  /// Nonzero: run exactly this many decomposition restarts and plan every
  /// improvement, ignoring wall-clock stopping rules, so results repeat.
  unsigned td_restarts = 0;
  WeightMode weights = WeightMode::file;
};

enum class RunStatus { ok, timeout, memory_cap };

struct RunReport {
  RunStatus status = RunStatus::ok;
  double wmc = std::numeric_limits<double>::quiet_NaN();
  Method method = Method::greedy;  // the method that produced the count
  int source_width = -1;
  int max_rank = -1;
  int peak_rank = 0;
  double estimated_seconds = 0.0;
  int plans_considered = 0;
  double parse_seconds = 0.0;
  double plan_seconds = 0.0;
  double contract_seconds = 0.0;
  double total_seconds = 0.0;
  std::string tree;     // empty if planning never finished
  std::string plan;     // format_plan text
  std::string message;  // why the run stopped early, if it did
};

/// Picks a plan for one concrete method (not portfolio). For lg and ft this
/// consumes improving decompositions until the time already spent planning
/// reaches the incumbent's estimated contraction time, the stream ends, or
/// the deadline passes. Throws TimeoutError if no plan was found in time.
PlanResult plan_network(const RunConfig& config, const TensorNetwork& n, Method method, const Deadline& deadline);

/// Reduces the formula, then plans and contracts. Timeouts and memory-cap refusals come back
/// as a report status; parse and argument errors throw.
RunReport count(const RunConfig& config, const CnfFormula& formula);

/// As `count`, timing the parse as well.
RunReport count_file(const RunConfig& config, const std::string& path);

/// DIMACS text for the vertex covers of a random connected cubic graph.
std::string gen_cubic_vc(int n, std::uint64_t seed);

/// Structural summary: graph sizes, degree histogram, best decomposition
/// widths found within the budget and the rank bounds they imply.
std::string inspect(const CnfFormula& formula, double budget_seconds, std::uint64_t seed);

}  // namespace tnc
