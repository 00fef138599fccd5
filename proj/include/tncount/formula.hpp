#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tncount/graph.hpp"

namespace tnc {

/// Signed DIMACS literal: +v is the variable v, -v its negation.
using Literal = int;

inline int var_of(Literal lit) { return lit < 0 ? -lit : lit; }

/// W(x,0) and W(x,1).
struct LiteralWeights {
  double w0 = 1.0;
  double w1 = 1.0;
  bool operator==(const LiteralWeights&) const = default;
};

/// A CNF formula together with its literal weight function.
///
/// Variables are 1..num_vars. Duplicate literals inside a clause are dropped
/// at construction; a clause holding both x and -x is tautological and kept
/// unchanged (its clause tensor is all ones).
class CnfFormula {
 public:
  explicit CnfFormula(int num_vars = 0);

  int num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  const std::vector<std::vector<Literal>>& clauses() const { return clauses_; }
  const std::vector<Literal>& clause(std::size_t c) const { return clauses_[c]; }

  /// Appends a clause, deduplicating identical literals. Throws
  /// InvalidArgument on an empty clause or an out-of-range literal.
  void add_clause(std::vector<Literal> literals);

  const LiteralWeights& weight(int var) const { return weights_.at(var - 1); }
  void set_weight(int var, LiteralWeights w);
  bool is_weighted() const;

  /// Variables of the clause in first-appearance order, each once (sup(C)).
  std::vector<int> support(std::size_t c) const;
  /// Clauses containing the variable, in clause order (dep(x)).
  std::vector<std::size_t> dependents(int var) const;

 private:
  int num_vars_;
  std::vector<std::vector<Literal>> clauses_;
  std::vector<LiteralWeights> weights_;
};

/// Total assignment to variables 1..n; bit (v-1) holds the value of v.
class Assignment {
 public:
  Assignment(int num_vars, std::uint64_t bits) : num_vars_(num_vars), bits_(bits) {}
  int num_vars() const { return num_vars_; }
  bool value(int var) const { return (bits_ >> (var - 1)) & 1U; }

 private:
  int num_vars_;
  std::uint64_t bits_;
};

bool satisfies(const CnfFormula& f, const Assignment& a);

/// Parses weighted DIMACS CNF. Weights come from `c w <v> <p>` lines
/// (W(v,1)=p, W(v,0)=1-p) or `w <v> <p0> <p1> 0` lines.
CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs(std::string_view text);
CnfFormula parse_dimacs_file(const std::string& path);

/// Writes DIMACS with explicit `w` lines for every non-unit weight.
std::string write_dimacs(const CnfFormula& f);

/// Direct evaluation of the weighted model count over all 2^n assignments.
double brute_force_wmc(const CnfFormula& f);
constexpr int kBruteForceMaxVars = 30;

/// Monotone 2-CNF whose models are the vertex covers of `g`.
CnfFormula encode_vertex_cover(const Multigraph& g);

/// Connected simple 3-regular graph on n vertices drawn from the pairing
/// model, rejecting loops, multi-edges and disconnected samples.
Multigraph random_cubic_graph(int n, std::uint64_t seed);

}  // namespace tnc
