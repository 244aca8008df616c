#include <doctest.h>

#include <algorithm>
#include <random>

#include "ndtopt/bounds.hpp"
#include "ndtopt/lp.hpp"
#include "support/random_lp.hpp"

using namespace ndtopt;
using testsupport::random_lp;
using testsupport::satisfies_exactly;

namespace {

LinearProgram lower_bounded_var() {
  // minimize x subject to x >= 1, x in [0, 10]
  LinearProgram lp;
  lp.objective = {Rat(1)};
  lp.le_rows = {{{Rat(-1)}, Rat(-1)}};
  lp.var_bounds = {{Rat(0), Rat(10)}};
  return lp;
}

LinearProgram forced_sum() {
  // minimize x+y subject to x+y = 1, x,y in [0,1]
  LinearProgram lp;
  lp.objective = {Rat(1), Rat(1)};
  lp.eq_rows = {{{Rat(1), Rat(1)}, Rat(1)}};
  lp.var_bounds = {{Rat(0), Rat(1)}, {Rat(0), Rat(1)}};
  return lp;
}

}  // namespace

TEST_CASE("simplex solves the named instances") {
  CHECK(solve(lower_bounded_var()).value == Rat(1));
  CHECK(solve(forced_sum()).value == Rat(1));

  NetworkConfig c33(3, 3, 3);
  auto sol = solve(assemble_ndt_lp(c33, {Rat(0), frac(1, 3)}));
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.value == frac(5, 3));
}

TEST_CASE("oracle agrees on the named instances and handles the corner cases") {
  CHECK(vertex_oracle(lower_bounded_var()).value == Rat(1));
  CHECK(vertex_oracle(forced_sum()).value == Rat(1));

  LinearProgram empty_feasible_set;  // x >= 2 and x <= 1
  empty_feasible_set.objective = {Rat(1)};
  empty_feasible_set.le_rows = {{{Rat(-1)}, Rat(-2)}, {{Rat(1)}, Rat(1)}};
  empty_feasible_set.var_bounds = {{Rat(0), Rat(10)}};
  CHECK(vertex_oracle(empty_feasible_set).status == LpStatus::infeasible);
  CHECK(solve(empty_feasible_set).status == LpStatus::infeasible);

  LinearProgram no_rows;  // minimize -x, x in [0,1]
  no_rows.objective = {Rat(-1)};
  no_rows.var_bounds = {{Rat(0), Rat(1)}};
  auto sol = vertex_oracle(no_rows);
  CHECK(sol.value == Rat(-1));
  CHECK(sol.point == std::vector<Rat>{Rat(1)});
}

TEST_CASE("oracle guard rejects more than 16 variables") {
  LinearProgram lp;
  lp.objective.assign(17, Rat(1));
  lp.var_bounds.assign(17, {Rat(0), Rat(1)});
  CHECK_THROWS_AS(vertex_oracle(lp), std::invalid_argument);
}

TEST_CASE("malformed programs are rejected") {
  LinearProgram lp;
  lp.objective = {Rat(1)};
  lp.var_bounds = {{Rat(1), Rat(0)}};  // lo > hi
  CHECK_THROWS_AS(solve(lp), std::invalid_argument);
  lp.var_bounds = {{Rat(0), Rat(1)}};
  lp.eq_rows = {{{Rat(1), Rat(2)}, Rat(0)}};  // row length mismatch
  CHECK_THROWS_AS(solve(lp), std::invalid_argument);
}

TEST_CASE("property: simplex matches the vertex oracle on random small programs") {
  std::mt19937_64 rng(2024);
  int feasible_count = 0;
  for (int i = 0; i < 60; ++i) {
    LinearProgram lp = random_lp(rng);
    LpSolution fast = solve(lp);
    LpSolution slow = vertex_oracle(lp);
    REQUIRE(fast.status == slow.status);
    if (fast.status == LpStatus::optimal) {
      ++feasible_count;
      CHECK(fast.value == slow.value);
      CHECK(satisfies_exactly(lp, fast.point));
      CHECK(satisfies_exactly(lp, slow.point));
    }
  }
  CHECK(feasible_count > 10);  // the generator should not collapse to all-infeasible
}

TEST_CASE("property: optimal value is invariant under row permutation") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 30; ++i) {
    LinearProgram lp = random_lp(rng);
    LpSolution base = solve(lp);
    LinearProgram shuffled = lp;
    std::shuffle(shuffled.le_rows.begin(), shuffled.le_rows.end(), rng);
    LpSolution again = solve(shuffled);
    REQUIRE(base.status == again.status);
    if (base.status == LpStatus::optimal) CHECK(base.value == again.value);
  }
}
