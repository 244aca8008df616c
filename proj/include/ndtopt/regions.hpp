#pragma once

#include "ndtopt/core.hpp"

namespace ndtopt {

// Piecewise-linear pieces of the optimal delivery time for the fixed-size
// networks; indices follow the canonical ordering of the pieces (1-based).
// Boundary points report the lowest matching index; the piece formulas
// agree on shared boundaries.
enum class RegionNetwork { TwoByTwo, ThreeByThree };

struct RegionId {
  RegionNetwork network;
  int index;  // 1..2 for 2x2, 1..5 for 3x3
};

RegionId classify_2x2(const CachePoint& pt);
Rat closed_form_2x2(const CachePoint& pt);
SplitRatios optimal_ratios_2x2(const CachePoint& pt);

RegionId classify_3x3(const CachePoint& pt);
Rat closed_form_3x3(const CachePoint& pt);
SplitRatios optimal_ratios_3x3(const CachePoint& pt);

}  // namespace ndtopt
