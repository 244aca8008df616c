#pragma once

#include <optional>
#include <tuple>

#include "ndtopt/core.hpp"
#include "ndtopt/lp.hpp"

namespace ndtopt {

struct LowerBoundResult {
  Rat tau;
  int l = 0;
  int s1 = 0;
  int s2 = 0;  // lexicographically smallest maximizer
};

struct OptimalityResult {
  int case_id;  // 1..4
  Rat tau_star;
};

enum class GapBoundClass {
  TxAtLeastRx,      // n_tx >= n_rx: gap <= 2
  LargeTxCache,     // n_tx < n_rx, mu_t >= 1/n_tx: gap <= 12
  SmallTxCache,     // n_tx < n_rx, mu_t < 1/n_tx: gap <= (n_tx+n_rx-1)/n_tx
};

struct GapResult {
  Rat gap;             // 1 when upper and lower are both zero (mu_r = 1)
  bool both_zero;
  GapBoundClass bound_class;
  Rat bound_value;
};

struct NdtReport {
  Rat tau_upper;
  SplitRatios ratios;
  Rat tau_lower_coded;
  LowerBoundResult lower_coded;
  Rat tau_lower_uncoded;
  LowerBoundResult lower_uncoded;
  std::optional<OptimalityResult> optimality;
  GapResult gap;
};

// The delivery-time LP over the splitting ratios: objective weights each
// delivery group by its per-receiver message count over its per-user DoF;
// one total-mass equality plus the two cache-budget inequalities; box
// bounds [0,1]. Variables follow index_set(cfg) order.
LinearProgram assemble_ndt_lp(const NetworkConfig& cfg, const CachePoint& pt);

// Exact optimum of the LP plus one optimal vertex (zeros omitted).
std::pair<Rat, SplitRatios> ndt_upper(const NetworkConfig& cfg, const CachePoint& pt);

// Delivery time of a concrete (validated) splitting.
Rat ndt_from_ratios(const NetworkConfig& cfg, const SplitRatios& s);

// Cut-set style lower bounds, maximized exhaustively over the receiver
// partition parameters (l, s1, s2). The coded variant allows arbitrary
// intra-file coding in the caches; the uncoded variant adds the common-bit
// penalty term active when n_tx*mu_t < 1.
LowerBoundResult ndt_lower_coded(const NetworkConfig& cfg, const CachePoint& pt);
LowerBoundResult ndt_lower_uncoded(const NetworkConfig& cfg, const CachePoint& pt);

// First matching exact-optimality case (1..4); case 4 requires caching
// without intra-file coding and only applies when allow_intra_file_coding
// is false.
std::optional<OptimalityResult> optimality_check(const NetworkConfig& cfg, const CachePoint& pt,
                                                 bool allow_intra_file_coding);

GapResult gap(const NetworkConfig& cfg, const CachePoint& pt);

// Full report used by the CLI and the bindings.
NdtReport compute_report(const NetworkConfig& cfg, const CachePoint& pt,
                         bool allow_intra_file_coding = false);

}  // namespace ndtopt
