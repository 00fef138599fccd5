#include "tncount/driver.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "tncount/errors.hpp"

namespace tnc {

namespace {

void check_config(const RunConfig& c) {
  if (!(c.timeout_seconds > 0)) throw InvalidArgument("timeout must be positive");
  if (c.mem_cap_entries == 0) throw InvalidArgument("memory cap must be positive");
  if (!(c.seconds_per_flop > 0)) throw InvalidArgument("seconds per flop must be positive");
  if (c.td_strategies.empty()) throw InvalidArgument("at least one decomposition strategy is needed");
}

TreeDecomposition load_td(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open decomposition file " + path);
  return read_pace_td(in);
}

}  // namespace

PlanResult plan_network(const RunConfig& config, const TensorNetwork& n, Method method, const Deadline& deadline) {
  const auto t0 = Clock::now();
  auto stamp = [&](PlanResult p) {
    p.plan_seconds = seconds_since(t0);
    return p;
  };
  if (method == Method::portfolio) throw InvalidArgument("portfolio is not a single planning method");
  if (method == Method::greedy) return stamp(plan_greedy(n, config.seed));

  const auto sg = structure_graph(n);
  if (sg.graph.num_edges() == 0) {
    // nothing to decompose: every order is equally good
    PlanResult p = plan_greedy(n, config.seed);
    p.method = method;
    return stamp(std::move(p));
  }
  const bool lg = method == Method::lg;
  auto make = [&](const TreeDecomposition& td) { return lg ? plan_lg(n, td) : plan_ft(n, td); };
  if (!config.import_td.empty()) return stamp(make(load_td(config.import_td)));

  Multigraph target = lg ? line_graph(sg.graph) : sg.graph;
  TdStream stream(std::move(target), config.td_strategies, deadline, config.seed, config.td_restarts);
  std::optional<PlanResult> best;
  double best_cost = 0.0;
  const bool settle = config.td_restarts != 0;
  for (;;) {
    Deadline wait = deadline;
    if (best && !settle)
      wait.at = std::min(deadline.at, t0 + std::chrono::duration_cast<Clock::duration>(
                                               std::chrono::duration<double>(best_cost)));
    auto td = stream.next(wait);
    if (!td) break;
    PlanResult p = make(*td);
    double cost = p.flops * config.seconds_per_flop;
    if (!best || cost < best_cost) {
      best = std::move(p);
      best_cost = cost;
    }
    if (!settle && seconds_since(t0) >= best_cost) break;
    if (deadline.expired()) break;
  }
  if (!best) {
    deadline.check();
    throw Error("decomposition stream ended without a decomposition");
  }
  return stamp(std::move(*best));
}

namespace {

RunReport run_method(const RunConfig& config, const TensorNetwork& n, Method method, const Deadline& deadline) {
  RunReport r;
  r.method = method;
  std::optional<PlanResult> plan;
  try {
    plan = plan_network(config, n, method, deadline);
  } catch (const TimeoutError& e) {
    r.status = RunStatus::timeout;
    r.message = std::string("planning: ") + e.what();
    return r;
  }
  r.plan_seconds = plan->plan_seconds;
  r.source_width = plan->source_width;
  r.max_rank = plan->max_rank;
  r.estimated_seconds = plan->flops * config.seconds_per_flop;
  r.tree = plan->tree.to_string();
  r.plan = format_plan(*plan);
  const auto t1 = Clock::now();
  try {
    ContractStats stats;
    Tensor result = contract(plan->network, plan->tree, {config.mem_cap_entries, deadline}, &stats);
    r.peak_rank = stats.peak_rank;
    double total = 0.0;
    for (double v : result.values()) total += v;
    r.wmc = total;
  } catch (const MemoryCapError& e) {
    r.status = RunStatus::memory_cap;
    r.message = e.what();
  } catch (const TimeoutError& e) {
    r.status = RunStatus::timeout;
    r.message = std::string("contraction: ") + e.what();
  }
  r.contract_seconds = seconds_since(t1);
  return r;
}

RunReport run_portfolio(const RunConfig& config, const TensorNetwork& n, const Deadline& deadline) {
  constexpr Method kMethods[] = {Method::greedy, Method::lg, Method::ft};
  std::stop_source cancel;
  std::stop_callback forward(deadline.stop, [&] { cancel.request_stop(); });
  std::mutex mu;
  std::optional<RunReport> winner;
  std::vector<std::optional<RunReport>> finished(3);
  std::exception_ptr failure;
  {
    std::vector<std::jthread> workers;
    for (int i = 0; i < 3; ++i) {
      workers.emplace_back([&, i] {
        Deadline d{deadline.at, cancel.get_token()};
        try {
          RunReport r = run_method(config, n, kMethods[i], d);
          std::lock_guard lock(mu);
          if (r.status == RunStatus::ok && !winner) {
            winner = r;
            cancel.request_stop();
          }
          finished[i] = std::move(r);
        } catch (const Cancelled&) {
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
#ifndef NDEBUG
  for (const auto& r : finished)
    if (r && winner && r->status == RunStatus::ok)
      assert(std::abs(r->wmc - winner->wmc) <= 1e-9 * std::max(std::abs(r->wmc), std::abs(winner->wmc)) + 1e-300);
#endif
  if (winner) return *winner;
  for (const auto& r : finished)
    if (r && r->status == RunStatus::memory_cap) return *r;
  if (failure) std::rethrow_exception(failure);
  for (const auto& r : finished)
    if (r) return *r;
  RunReport r;
  r.method = Method::portfolio;
  r.status = RunStatus::timeout;
  r.message = "no method finished before the deadline";
  return r;
}

}  // namespace

RunReport count(const RunConfig& config, const CnfFormula& formula) {
  check_config(config);
  const auto t0 = Clock::now();
  CnfFormula f = formula;
  if (config.weights == WeightMode::unit)
    for (int v = 1; v <= f.num_vars(); ++v) f.set_weight(v, {});
  const TensorNetwork n = reduce_wmc(f);
  const Deadline deadline = Deadline::in(config.timeout_seconds);
  RunReport r = config.method == Method::portfolio ? run_portfolio(config, n, deadline)
                                                   : run_method(config, n, config.method, deadline);
  r.total_seconds = seconds_since(t0);
  return r;
}

RunReport count_file(const RunConfig& config, const std::string& path) {
  check_config(config);
  const auto t0 = Clock::now();
  CnfFormula f = parse_dimacs_file(path);
  double parse = seconds_since(t0);
  RunReport r = count(config, f);
  r.parse_seconds = parse;
  r.total_seconds = seconds_since(t0);
  return r;
}

std::string gen_cubic_vc(int n, std::uint64_t seed) {
  return write_dimacs(encode_vertex_cover(random_cubic_graph(n, seed)));
}

std::string inspect(const CnfFormula& formula, double budget_seconds, std::uint64_t seed) {
  if (!(budget_seconds > 0)) throw InvalidArgument("budget must be positive");
  const TensorNetwork n = reduce_wmc(formula);
  const auto sg = structure_graph(n);
  const Multigraph& g = sg.graph;
  std::ostringstream out;
  out << "c vars " << formula.num_vars() << '\n'
      << "c clauses " << formula.num_clauses() << '\n'
      << "c tensors " << n.size() << '\n'
      << "c indices " << n.num_indices() << '\n'
      << "c structure_graph vertices " << g.num_vertices() << " edges " << g.num_edges() << '\n';
  std::map<int, int> hist;
  int max_var_degree = 0;
  for (int v = 0; v < static_cast<int>(n.size()); ++v) {
    ++hist[g.degree(v)];
    if (v < formula.num_vars()) max_var_degree = std::max(max_var_degree, g.degree(v));
  }
  out << "c degree_histogram";
  for (auto [d, c] : hist) out << ' ' << d << ':' << c;
  out << '\n' << "c max_variable_degree " << max_var_degree << '\n';
  if (g.num_edges() == 0) {
    out << "c no indices; nothing to decompose\n";
    return out.str();
  }

  static constexpr TdStrategy kBoth[] = {TdStrategy::min_fill, TdStrategy::min_degree};
  auto best_td = [&](const Multigraph& graph, double seconds) {
    std::optional<TreeDecomposition> best;
    anytime_td(graph, kBoth, Deadline::in(seconds), seed, [&](const TreeDecomposition& td) {
      best = td;
      return true;
    });
    return *best;
  };
  const Multigraph line = line_graph(g);
  TreeDecomposition gtd = best_td(g, budget_seconds / 2);
  TreeDecomposition ltd = best_td(line, budget_seconds / 2);
  const int wg = gtd.width(), wl = ltd.width();
  out << "c td_width structure_graph " << wg << '\n'
      << "c td_width line_graph " << wl << '\n'
      << "c lg_carving_bound " << wl + 1 << '\n'
      << "c ft_rank_bound " << ft_rank_bound(std::max(wg, 1)) << '\n';
  auto lg = plan_lg(n, ltd);
  out << "c lg_plan_max_rank " << lg.max_rank << '\n';
  if (n.free_indices().size() <= 3) {
    auto ft = plan_ft(n, gtd);
    int max_piece = 0;
    for (const auto& t : ft.network.tensors()) max_piece = std::max(max_piece, t.rank());
    out << "c ft_plan_max_rank " << ft.max_rank << '\n'
        << "c ft_factored_max_degree " << max_piece << '\n'
        << "c ft_factored_tensors " << ft.network.size() << '\n';
  }
  return out.str();
}

}  // namespace tnc
