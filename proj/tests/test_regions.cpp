#include <doctest.h>

#include "ndtopt/bounds.hpp"
#include "ndtopt/regions.hpp"

using namespace ndtopt;

namespace {

// Test-local copies of the per-piece formulas, used to check boundary
// continuity independently of the classifier.
Rat piece_2x2(int index, const CachePoint& pt) {
  if (index == 1) return Rat(1) - pt.mu_r;
  return Rat(2) - 2 * pt.mu_r - pt.mu_t;
}

Rat piece_3x3(int index, const CachePoint& pt) {
  const Rat& mr = pt.mu_r;
  const Rat& mt = pt.mu_t;
  switch (index) {
    case 1:
      return Rat(1) - mr;
    case 2:
      return frac(4, 3) - frac(4, 3) * mr - frac(1, 3) * mt;
    case 3:
      return frac(3, 2) - frac(5, 3) * mr - frac(1, 2) * mt;
    case 4:
      return frac(13, 6) - frac(8, 3) * mr - frac(3, 2) * mt;
    default:
      return frac(8, 3) - frac(8, 3) * mr - 3 * mt;
  }
}

}  // namespace

TEST_CASE("2x2 classification and values") {
  CHECK(classify_2x2({frac(1, 2), frac(1, 2)}).index == 1);
  CHECK(classify_2x2({Rat(0), frac(1, 2)}).index == 2);
  CHECK(classify_2x2({Rat(1), Rat(1)}).index == 1);

  CHECK(closed_form_2x2({frac(1, 2), frac(1, 2)}) == frac(1, 2));
  CHECK(closed_form_2x2({Rat(0), frac(1, 2)}) == frac(3, 2));
  CHECK(closed_form_2x2({Rat(0), Rat(1)}) == Rat(1));

  CHECK_THROWS_AS(classify_2x2({Rat(0), frac(1, 4)}), std::invalid_argument);
}

TEST_CASE("2x2 optimal ratios") {
  auto a = optimal_ratios_2x2({frac(1, 2), frac(1, 2)});
  CHECK(a.get(2, 0) == frac(1, 2));
  CHECK(a.get(0, 2) == frac(1, 2));
  CHECK(a.ratios.size() == 2);

  auto b = optimal_ratios_2x2({Rat(0), frac(1, 2)});
  CHECK(b.get(0, 1) == frac(1, 2));
  CHECK(b.get(0, 2) == Rat(0));  // zero entries are dropped
  CHECK(b.ratios.size() == 1);

  auto c = optimal_ratios_2x2({Rat(1), Rat(0)});
  CHECK(c.get(2, 0) == Rat(1));
  CHECK(c.ratios.size() == 1);
}

TEST_CASE("3x3 classification, values and ratios") {
  CachePoint p1{Rat(0), frac(1, 2)};
  CHECK(classify_3x3(p1).index == 4);
  CHECK(closed_form_3x3(p1) == frac(17, 12));
  auto r1 = optimal_ratios_3x3(p1);
  CHECK(r1.get(1, 1) == Rat(0));
  CHECK(r1.get(0, 1) == frac(1, 6));
  CHECK(r1.get(0, 2) == frac(1, 6));

  CachePoint p2{frac(1, 3), frac(2, 3)};
  CHECK(classify_3x3(p2).index == 1);
  CHECK(closed_form_3x3(p2) == frac(2, 3));

  CachePoint p3{Rat(0), frac(1, 3)};
  CHECK(classify_3x3(p3).index == 5);
  CHECK(closed_form_3x3(p3) == frac(5, 3));
  auto r3 = optimal_ratios_3x3(p3);
  CHECK(r3.get(1, 1) == Rat(0));
  CHECK(r3.get(0, 1) == frac(1, 3));
  CHECK(r3.get(3, 0) == Rat(0));
}

TEST_CASE("boundary points take the lowest region index and the formulas agree there") {
  // (1, 0) lies in both the fully-cached piece and the small-cache piece.
  CachePoint corner{Rat(1), Rat(0)};
  CHECK(classify_3x3(corner).index == 1);
  CHECK(piece_3x3(1, corner) == piece_3x3(5, corner));

  // 2x2: the single interior boundary mu_r + mu_t = 1.
  for (int k = 0; k <= 24; ++k) {
    CachePoint pt{frac(k, 24), Rat(1) - frac(k, 24)};
    CHECK(classify_2x2(pt).index == 1);
    CHECK(piece_2x2(1, pt) == piece_2x2(2, pt));
  }
}

TEST_CASE("3x3 boundary lines are continuous") {
  // adjacent pieces and the lines they share, as (index_a, index_b, mu_r(mu_t))
  for (int k = 0; k <= 24; ++k) {
    Rat mt = frac(k, 24);
    // pieces 1|2 along mu_r + mu_t = 1
    if (mt <= 1) {
      CachePoint pt{Rat(1) - mt, mt};
      CHECK(piece_3x3(1, pt) == piece_3x3(2, pt));
    }
    // pieces 2|3 along 2 mu_r + mu_t = 1
    if (mt <= 1) {
      CachePoint pt{(Rat(1) - mt) / 2, mt};
      CHECK(piece_3x3(2, pt) == piece_3x3(3, pt));
    }
    // pieces 3|4 along mu_r + mu_t = 2/3
    if (mt <= frac(2, 3)) {
      CachePoint pt{frac(2, 3) - mt, mt};
      CHECK(piece_3x3(3, pt) == piece_3x3(4, pt));
    }
    // pieces 2|5 along mu_r + 2 mu_t = 1, mu_t <= 1/3
    if (mt <= frac(1, 3)) {
      CachePoint pt{Rat(1) - 2 * mt, mt};
      CHECK(piece_3x3(2, pt) == piece_3x3(5, pt));
    }
  }
  // pieces 4|5 along mu_t = 1/3
  for (int k = 0; k <= 24; ++k) {
    CachePoint pt{frac(k, 24), frac(1, 3)};
    CHECK(piece_3x3(4, pt) == piece_3x3(5, pt));
  }
}

TEST_CASE("classified value always matches the dispatched piece") {
  for (int i = 0; i <= 24; ++i) {
    for (int j = 0; j <= 24; ++j) {
      CachePoint pt{frac(i, 24), frac(j, 24)};
      if (pt.mu_r + 2 * pt.mu_t >= 1) {
        CHECK(closed_form_2x2(pt) == piece_2x2(classify_2x2(pt).index, pt));
      }
      if (pt.mu_r + 3 * pt.mu_t >= 1) {
        CHECK(closed_form_3x3(pt) == piece_3x3(classify_3x3(pt).index, pt));
      }
    }
  }
}

TEST_CASE("closed forms agree with the LP on a coarse grid") {
  // the acceptance suite runs the full 1/24 grid; keep a 1/8 spot-check here
  NetworkConfig c22(2, 2, 2), c33(3, 3, 3);
  for (int i = 0; i <= 8; ++i) {
    for (int j = 0; j <= 8; ++j) {
      CachePoint pt{frac(i, 8), frac(j, 8)};
      if (feasible_cache_point(c22, pt)) {
        CHECK(ndt_upper(c22, pt).first == closed_form_2x2(pt));
        auto ratios = optimal_ratios_2x2(pt);
        CHECK(validate_split(c22, pt, ratios).ok());
        CHECK(ndt_from_ratios(c22, ratios) == closed_form_2x2(pt));
      }
      if (feasible_cache_point(c33, pt)) {
        CHECK(ndt_upper(c33, pt).first == closed_form_3x3(pt));
        auto ratios = optimal_ratios_3x3(pt);
        CHECK(validate_split(c33, pt, ratios).ok());
        CHECK(ndt_from_ratios(c33, ratios) == closed_form_3x3(pt));
      }
    }
  }
}

TEST_CASE("the LP vertex reproduces the unique solutions of pieces 3-5") {
  NetworkConfig c33(3, 3, 3);
  std::vector<CachePoint> interior{{frac(1, 8), frac(5, 8)},    // piece 3
                                   {frac(1, 12), frac(1, 2)},   // piece 4
                                   {frac(1, 8), frac(7, 24)}};  // piece 5
  for (const auto& pt : interior) {
    CHECK(classify_3x3(pt).index >= 3);
    CHECK(ndt_upper(c33, pt).second.ratios == optimal_ratios_3x3(pt).ratios);
  }
}

TEST_CASE("full-cache piece keeps the receiver-mass identity") {
  // In the top piece the returned ratios put exactly mu_r on the
  // cached-at-all-receivers subfile and use no partially-cached states.
  for (int k = 0; k <= 12; ++k) {
    CachePoint pt{frac(k, 12), Rat(1) - frac(k, 12)};
    auto ratios = optimal_ratios_3x3(pt);
    CHECK(ratios.get(1, 1) == 0);
    CHECK(ratios.get(0, 1) == 0);
    CHECK(ratios.get(0, 2) == 0);
    CHECK(ratios.get(3, 0) == pt.mu_r);
  }
}
