#pragma once

#include <vector>

#include "ndtopt/rational.hpp"

namespace ndtopt {

// Dense exact-rational LP: minimize c.x subject to equality rows, <= rows
// and finite box bounds on every variable.
struct LinearProgram {
  std::vector<Rat> objective;
  std::vector<std::pair<std::vector<Rat>, Rat>> eq_rows;
  std::vector<std::pair<std::vector<Rat>, Rat>> le_rows;
  std::vector<std::pair<Rat, Rat>> var_bounds;  // [lo, hi], lo <= hi

  int num_vars() const { return static_cast<int>(objective.size()); }
  void check_well_formed() const;  // throws std::invalid_argument
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Rat value;
  std::vector<Rat> point;
};

// Two-phase bounded-variable simplex with Bland's anti-cycling rule.
// Exact rational arithmetic throughout; the returned vertex satisfies all
// constraints with exact (in)equality, which is asserted before returning.
LpSolution solve(const LinearProgram& lp);

// Independent optimum oracle: enumerates every basic feasible point from
// active-constraint subsets (variables pinned at a bound, equality rows,
// and tight <= rows) and returns the exact minimum over them. Exponential;
// guarded to at most 16 variables.
LpSolution vertex_oracle(const LinearProgram& lp);

}  // namespace ndtopt
