// Small shared inputs for the unit and acceptance tests.
#pragma once

#include <string_view>

#include "tncount/decomp.hpp"
#include "tncount/formula.hpp"

namespace fixture {

// (w ∨ x ∨ ¬y) ∧ (w ∨ y ∨ z) ∧ (¬x ∨ ¬y) ∧ (¬y ∨ ¬z) with w,x,y,z = 1..4.
// Its unit-weight count is 7.
inline constexpr std::string_view kFourClause = "p cnf 4 4\n1 2 -3 0\n1 3 4 0\n-2 -3 0\n-3 -4 0\n";

inline tnc::CnfFormula four_clause() { return tnc::parse_dimacs(kFourClause); }

// Width-3 decomposition of the four-clause structure graph. Vertices: w=0 x=1 y=2
// z=3 (variable tensors) and A=4 B=5 C=6 D=7 (clause tensors). The free
// vertex 8 is isolated and left out.
inline tnc::TreeDecomposition width3_td() {
  tnc::TreeDecomposition td;
  td.tree = tnc::UnrootedTree(6);
  td.bags = {{0, 1, 2, 4}, {1, 2, 6}, {0, 1, 2}, {0, 2, 3}, {0, 2, 3, 5}, {2, 3, 7}};
  td.tree.add_arc(0, 2);
  td.tree.add_arc(1, 2);
  td.tree.add_arc(2, 3);
  td.tree.add_arc(3, 4);
  td.tree.add_arc(3, 5);
  return td;
}

}  // namespace fixture
