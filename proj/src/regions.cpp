#include "ndtopt/regions.hpp"

#include <stdexcept>

namespace ndtopt {

namespace {

void require_feasible(const CachePoint& pt, int n_tx, const char* what) {
  if (pt.mu_r < 0 || pt.mu_r > 1 || pt.mu_t < 0 || pt.mu_t > 1 ||
      pt.mu_r + n_tx * pt.mu_t < 1) {
    throw std::invalid_argument(std::string(what) + ": infeasible cache point");
  }
}

void drop_zeros(SplitRatios& s) {
  for (auto it = s.ratios.begin(); it != s.ratios.end();) {
    it = (it->second == 0) ? s.ratios.erase(it) : std::next(it);
  }
}

}  // namespace

RegionId classify_2x2(const CachePoint& pt) {
  require_feasible(pt, 2, "classify_2x2");
  if (pt.mu_r + pt.mu_t >= 1) return {RegionNetwork::TwoByTwo, 1};
  return {RegionNetwork::TwoByTwo, 2};
}

Rat closed_form_2x2(const CachePoint& pt) {
  switch (classify_2x2(pt).index) {
    case 1:
      return Rat(1) - pt.mu_r;
    default:
      return Rat(2) - 2 * pt.mu_r - pt.mu_t;
  }
}

SplitRatios optimal_ratios_2x2(const CachePoint& pt) {
  SplitRatios s;
  if (classify_2x2(pt).index == 1) {
    s.set(2, 0, pt.mu_r);
    s.set(0, 2, Rat(1) - pt.mu_r);
  } else {
    s.set(0, 1, Rat(1) - pt.mu_r - pt.mu_t);
    s.set(2, 0, pt.mu_r);
    s.set(0, 2, 2 * pt.mu_t - (Rat(1) - pt.mu_r));
  }
  drop_zeros(s);
  return s;
}

RegionId classify_3x3(const CachePoint& pt) {
  require_feasible(pt, 3, "classify_3x3");
  const Rat& mr = pt.mu_r;
  const Rat& mt = pt.mu_t;
  if (mr + mt >= 1) return {RegionNetwork::ThreeByThree, 1};
  if (2 * mr + mt >= 1 && mr + 2 * mt > 1) return {RegionNetwork::ThreeByThree, 2};
  if (3 * mr + 3 * mt >= 2 && 2 * mr + mt < 1) return {RegionNetwork::ThreeByThree, 3};
  if (3 * mr + 3 * mt < 2 && 3 * mt > 1) return {RegionNetwork::ThreeByThree, 4};
  if (3 * mt <= 1 && mr + 2 * mt <= 1 && mr + 3 * mt >= 1) {
    return {RegionNetwork::ThreeByThree, 5};
  }
  throw std::logic_error("classify_3x3: feasible point matched no region");
}

Rat closed_form_3x3(const CachePoint& pt) {
  const Rat& mr = pt.mu_r;
  const Rat& mt = pt.mu_t;
  switch (classify_3x3(pt).index) {
    case 1:
      return Rat(1) - mr;
    case 2:
      return Rat(4, 3) - Rat(4, 3) * mr - Rat(1, 3) * mt;
    case 3:
      return Rat(3, 2) - Rat(5, 3) * mr - Rat(1, 2) * mt;
    case 4:
      return Rat(13, 6) - Rat(8, 3) * mr - Rat(3, 2) * mt;
    default:
      return Rat(8, 3) - Rat(8, 3) * mr - 3 * mt;
  }
}

SplitRatios optimal_ratios_3x3(const CachePoint& pt) {
  const Rat& mr = pt.mu_r;
  const Rat& mt = pt.mu_t;
  SplitRatios s;
  switch (classify_3x3(pt).index) {
    case 1:  // non-unique; the two-subfile solution
      s.set(3, 0, mr);
      s.set(0, 3, Rat(1) - mr);
      break;
    case 2:  // non-unique; the three-subfile solution
      s.set(1, 1, (Rat(1) - mr - mt) / 3);
      s.set(3, 0, 2 * mr + mt - 1);
      s.set(0, 3, mr + 2 * mt - 1);
      break;
    case 3:
      s.set(1, 1, mr / 3);
      s.set(0, 2, Rat(1) - 2 * mr - mt);
      s.set(0, 3, 3 * mr + 3 * mt - 2);
      break;
    case 4:
      s.set(1, 1, mr / 3);
      s.set(0, 1, Rat(2, 3) - mr - mt);
      s.set(0, 2, mt - Rat(1, 3));
      break;
    default:
      s.set(1, 1, mr / 3 + mt - Rat(1, 3));
      s.set(0, 1, Rat(1) - mr - 2 * mt);
      s.set(3, 0, Rat(1) - 3 * mt);
      break;
  }
  drop_zeros(s);
  return s;
}

}  // namespace ndtopt
