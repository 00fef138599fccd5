#include "tncount/formula.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "rng.hpp"
#include "tncount/errors.hpp"

namespace tnc {

CnfFormula::CnfFormula(int num_vars) : num_vars_(num_vars), weights_(num_vars) {
  if (num_vars < 0) throw InvalidArgument("negative variable count");
}

void CnfFormula::add_clause(std::vector<Literal> literals) {
  if (literals.empty()) throw InvalidArgument("empty clause");
  std::vector<Literal> kept;
  kept.reserve(literals.size());
  for (Literal l : literals) {
    if (l == 0 || var_of(l) > num_vars_) throw InvalidArgument("literal " + std::to_string(l) + " out of range");
    if (std::find(kept.begin(), kept.end(), l) == kept.end()) kept.push_back(l);
  }
  clauses_.push_back(std::move(kept));
}

void CnfFormula::set_weight(int var, LiteralWeights w) {
  if (var < 1 || var > num_vars_) throw InvalidArgument("weight for unknown variable " + std::to_string(var));
  weights_[var - 1] = w;
}

bool CnfFormula::is_weighted() const {
  return std::any_of(weights_.begin(), weights_.end(), [](const LiteralWeights& w) { return w != LiteralWeights{}; });
}

std::vector<int> CnfFormula::support(std::size_t c) const {
  std::vector<int> vars;
  for (Literal l : clauses_[c])
    if (std::find(vars.begin(), vars.end(), var_of(l)) == vars.end()) vars.push_back(var_of(l));
  return vars;
}

std::vector<std::size_t> CnfFormula::dependents(int var) const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < clauses_.size(); ++c)
    for (Literal l : clauses_[c])
      if (var_of(l) == var) {
        out.push_back(c);
        break;
      }
  return out;
}

bool satisfies(const CnfFormula& f, const Assignment& a) {
  for (const auto& clause : f.clauses()) {
    bool sat = false;
    for (Literal l : clause)
      if (a.value(var_of(l)) == (l > 0)) {
        sat = true;
        break;
      }
    if (!sat) return false;
  }
  return true;
}

namespace {

double parse_real(const std::string& tok, std::size_t lineno) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(lineno, "expected a number, got '" + tok + "'");
  }
}

long parse_int(const std::string& tok, std::size_t lineno) {
  try {
    std::size_t used = 0;
    long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(lineno, "expected an integer, got '" + tok + "'");
  }
}

}  // namespace

CnfFormula parse_dimacs(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  long declared_clauses = 0;
  CnfFormula f;
  std::vector<Literal> pending;

  auto set_weight = [&](long var, LiteralWeights w) {
    if (!header) throw ParseError(lineno, "weight line before the 'p cnf' header");
    if (var < 1 || var > f.num_vars()) throw ParseError(lineno, "weight for unknown variable " + std::to_string(var));
    f.set_weight(static_cast<int>(var), w);
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::vector<std::string> toks;
    for (std::string t; ss >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    const std::string& head = toks[0];

    if (head == "c") {
      if (toks.size() >= 4 && toks[1] == "w") {
        double p = parse_real(toks[3], lineno);
        set_weight(parse_int(toks[2], lineno), {1.0 - p, p});
      }
      continue;
    }
    if (head == "%") break;
    if (head == "p") {
      if (header) throw ParseError(lineno, "second 'p' header");
      if (toks.size() != 4 || toks[1] != "cnf") throw ParseError(lineno, "malformed header, expected 'p cnf <vars> <clauses>'");
      long vars = parse_int(toks[2], lineno);
      declared_clauses = parse_int(toks[3], lineno);
      if (vars < 0 || declared_clauses < 0) throw ParseError(lineno, "negative count in header");
      f = CnfFormula(static_cast<int>(vars));
      header = true;
      continue;
    }
    if (head == "w") {
      if (toks.size() != 5 || toks[4] != "0") throw ParseError(lineno, "malformed weight line, expected 'w <var> <p0> <p1> 0'");
      set_weight(parse_int(toks[1], lineno), {parse_real(toks[2], lineno), parse_real(toks[3], lineno)});
      continue;
    }
    if (!header) throw ParseError(lineno, "clause before the 'p cnf' header");
    for (const auto& t : toks) {
      long lit = parse_int(t, lineno);
      if (lit == 0) {
        if (pending.empty()) throw ParseError(lineno, "empty clause");
        f.add_clause(std::move(pending));
        pending.clear();
        continue;
      }
      if (lit < -f.num_vars() || lit > f.num_vars())
        throw ParseError(lineno, "literal " + std::to_string(lit) + " out of range 1.." + std::to_string(f.num_vars()));
      pending.push_back(static_cast<Literal>(lit));
    }
  }
  if (!header) throw ParseError(lineno, "missing 'p cnf' header");
  if (!pending.empty()) f.add_clause(std::move(pending));
  if (static_cast<long>(f.num_clauses()) != declared_clauses)
    throw ParseError(lineno, "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                                 std::to_string(f.num_clauses()));
  return f;
}

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

CnfFormula parse_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse_dimacs(in);
}

std::string write_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
  char buf[64];
  for (int v = 1; v <= f.num_vars(); ++v) {
    const auto& w = f.weight(v);
    if (w == LiteralWeights{}) continue;
    std::snprintf(buf, sizeof buf, "%.17g %.17g", w.w0, w.w1);
    out << "w " << v << ' ' << buf << " 0\n";
  }
  for (const auto& clause : f.clauses()) {
    for (Literal l : clause) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

double brute_force_wmc(const CnfFormula& f) {
  const int n = f.num_vars();
  if (n > kBruteForceMaxVars)
    throw InvalidArgument("brute force refuses " + std::to_string(n) + " variables (limit " +
                          std::to_string(kBruteForceMaxVars) + ")");
  struct Masks {
    std::uint64_t pos = 0, neg = 0;
  };
  std::vector<Masks> masks;
  for (const auto& clause : f.clauses()) {
    Masks m;
    for (Literal l : clause) (l > 0 ? m.pos : m.neg) |= std::uint64_t{1} << (var_of(l) - 1);
    masks.push_back(m);
  }
  double total = 0.0;
  const std::uint64_t all = (n == 64) ? ~0ULL : ((std::uint64_t{1} << n) - 1);
  for (std::uint64_t bits = 0;; ++bits) {
    bool sat = std::all_of(masks.begin(), masks.end(),
                           [&](const Masks& m) { return (bits & m.pos) != 0 || (~bits & m.neg) != 0; });
    if (sat) {
      double w = 1.0;
      for (int v = 1; v <= n; ++v) {
        const auto& lw = f.weight(v);
        w *= ((bits >> (v - 1)) & 1U) ? lw.w1 : lw.w0;
      }
      total += w;
    }
    if (bits == all) break;
  }
  return total;
}

CnfFormula encode_vertex_cover(const Multigraph& g) {
  CnfFormula f(g.num_vertices());
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.endpoints(e);
    f.add_clause({u + 1, v + 1});
  }
  return f;
}

Multigraph random_cubic_graph(int n, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) throw InvalidArgument("cubic graphs need an even vertex count of at least 4, got " + std::to_string(n));
  detail::Rng rng(seed);
  std::vector<int> points(3 * static_cast<std::size_t>(n));
  for (;;) {
    for (std::size_t i = 0; i < points.size(); ++i) points[i] = static_cast<int>(i / 3);
    rng.shuffle(points);
    std::set<std::pair<int, int>> seen;
    bool ok = true;
    for (std::size_t i = 0; ok && i < points.size(); i += 2) {
      int u = points[i], v = points[i + 1];
      ok = u != v && seen.insert(std::minmax(u, v)).second;
    }
    if (!ok) continue;
    Multigraph g(n);
    for (std::size_t i = 0; i < points.size(); i += 2) g.add_edge(points[i], points[i + 1]);
    if (g.is_connected()) return g;
  }
}

}  // namespace tnc
