#include <doctest.h>

#include <random>

#include "ndtopt/core.hpp"

using namespace ndtopt;

TEST_CASE("binomial with the out-of-range convention") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(3, 0) == 1);
  CHECK(binomial(2, 3) == 0);
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(6, 6) == 1);
}

TEST_CASE("config invariants") {
  CHECK_THROWS_AS(NetworkConfig(1, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(NetworkConfig(2, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(NetworkConfig(2, 3, 2), std::invalid_argument);  // fewer files than receivers
}

TEST_CASE("cache point feasibility") {
  NetworkConfig cfg(3, 3, 3);
  CHECK(feasible_cache_point(cfg, {Rat(0), frac(1, 3)}));
  CHECK(feasible_cache_point(cfg, {Rat(1), Rat(0)}));
  CHECK_FALSE(feasible_cache_point(cfg, {Rat(0), frac(1, 4)}));
}

TEST_CASE("feasibility is monotone in both cache sizes") {
  std::mt19937_64 rng(11);
  NetworkConfig cfg(3, 4, 4);
  for (int i = 0; i < 200; ++i) {
    Rat mr = frac(rng() % 25, 24), mt = frac(rng() % 25, 24);
    CachePoint pt{mr, mt};
    if (!feasible_cache_point(cfg, pt)) continue;
    Rat mr2 = mr + frac(rng() % 5, 24), mt2 = mt + frac(rng() % 5, 24);
    if (mr2 > 1 || mt2 > 1) continue;
    CHECK(feasible_cache_point(cfg, {mr2, mt2}));
  }
}

TEST_CASE("index set enumerates the admissible cache states in (r, t) order") {
  NetworkConfig c22(2, 2, 2);
  std::vector<CacheStateIndex> want{{0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}};
  CHECK(index_set(c22) == want);

  NetworkConfig c33(3, 3, 3);
  auto states = index_set(c33);
  CHECK(states.size() == 13);
  CHECK(std::find(states.begin(), states.end(), CacheStateIndex{3, 0}) != states.end());
  for (int r = 0; r <= 3; ++r) {
    for (int t = 1; t <= 3; ++t) {
      CHECK(std::find(states.begin(), states.end(), CacheStateIndex{r, t}) != states.end());
    }
  }
}

TEST_CASE("index set cardinality is (n_rx+1)*n_tx + 1") {
  for (int nt = 2; nt <= 6; ++nt) {
    for (int nr = 2; nr <= 6; ++nr) {
      NetworkConfig cfg(nt, nr, nr);
      CHECK(index_set(cfg).size() == static_cast<size_t>((nr + 1) * nt + 1));
      CHECK(in_index_set(cfg, nr, 0));
    }
  }
}

TEST_CASE("split validation accepts the two integer-point splittings") {
  NetworkConfig cfg(3, 3, 3);
  CachePoint pt{frac(1, 3), frac(2, 3)};

  SplitRatios two_subfiles;
  two_subfiles.set(0, 3, frac(2, 3));
  two_subfiles.set(3, 0, frac(1, 3));
  CHECK(validate_split(cfg, pt, two_subfiles).ok());

  SplitRatios nine_subfiles;
  nine_subfiles.set(1, 2, frac(1, 9));
  CHECK(validate_split(cfg, pt, nine_subfiles).ok());
}

TEST_CASE("split validation reports the violated constraint with its lhs") {
  NetworkConfig cfg(2, 2, 2);
  CachePoint pt{Rat(0), frac(1, 2)};
  SplitRatios s;
  s.set(0, 1, frac(1, 4));
  auto v = validate_split(cfg, pt, s);
  REQUIRE_FALSE(v.ok());
  REQUIRE(v.violations.size() == 1);
  CHECK(v.violations[0].constraint == "total");
  CHECK(v.violations[0].lhs == frac(1, 2));
}

TEST_CASE("split validation flags inadmissible keys and out-of-range values") {
  NetworkConfig cfg(3, 3, 3);
  CachePoint pt{Rat(1), Rat(1)};
  SplitRatios s;
  s.set(1, 0, frac(1, 2));  // r + n_rx*t = 1 < n_rx
  auto v = validate_split(cfg, pt, s);
  bool saw_membership = false;
  for (const auto& viol : v.violations) saw_membership |= viol.constraint == "membership";
  CHECK(saw_membership);
}

TEST_CASE("exactness: nudging any ratio upward breaks the total-mass identity") {
  NetworkConfig cfg(3, 3, 3);
  CachePoint pt{frac(1, 3), frac(2, 3)};
  SplitRatios s;
  s.set(1, 2, frac(1, 9));
  REQUIRE(validate_split(cfg, pt, s).ok());
  SplitRatios bumped = s;
  bumped.set(1, 2, frac(1, 9) + frac(1, 1000000));
  auto v = validate_split(cfg, pt, bumped);
  bool total_broken = false;
  for (const auto& viol : v.violations) total_broken |= viol.constraint == "total";
  CHECK(total_broken);
}

TEST_CASE("subset enumeration is lexicographic and complete") {
  auto subs = subsets_of_size(4, 2);
  REQUIRE(subs.size() == 6);
  CHECK(subs.front() == std::vector<int>{0, 1});
  CHECK(subs.back() == std::vector<int>{2, 3});
  CHECK(subsets_of_size(3, 0) == std::vector<std::vector<int>>{{}});
  CHECK(subsets_of_size(2, 3).empty());
}
