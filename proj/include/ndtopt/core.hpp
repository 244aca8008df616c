#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "ndtopt/rational.hpp"

namespace ndtopt {

// An N_T x N_R interference network with a library of n_files equal-size
// files. Every node caches; receivers request one file each.
struct NetworkConfig {
  int n_tx;
  int n_rx;
  int n_files;

  NetworkConfig(int n_tx_, int n_rx_, int n_files_);
};

// Normalized cache sizes: each transmitter holds mu_t * L files worth of
// bits, each receiver mu_r * L.
struct CachePoint {
  Rat mu_r;
  Rat mu_t;

  CachePoint(Rat mu_r_, Rat mu_t_);
};

// (r, t): a subfile class cached at exactly r receivers and t transmitters.
struct CacheStateIndex {
  int r;
  int t;

  friend auto operator<=>(const CacheStateIndex&, const CacheStateIndex&) = default;
};

// Sparse map of file splitting ratios; absent keys mean ratio 0.
struct SplitRatios {
  std::map<CacheStateIndex, Rat> ratios;

  Rat get(int r, int t) const;
  void set(int r, int t, Rat value);
};

struct SplitViolation {
  std::string constraint;  // "membership", "range", "total", "rx_budget", "tx_budget"
  std::string detail;
  Rat lhs;
};

struct SplitValidation {
  std::vector<SplitViolation> violations;

  bool ok() const { return violations.empty(); }
};

// C(n, k); 0 outside 0 <= k <= n.
mpz_class binomial(int n, int k);

// Cache-point feasibility: the library must fit in the union of all
// transmitter caches plus any one receiver cache, mu_r + n_tx*mu_t >= 1.
bool feasible_cache_point(const NetworkConfig& cfg, const CachePoint& pt);

// The admissible (r, t) cache states: a bit not cached at every receiver
// must sit in at least one transmitter, r + n_rx*t >= n_rx. Lexicographic
// (r, t) order; this order also fixes LP variable indexing.
std::vector<CacheStateIndex> index_set(const NetworkConfig& cfg);

bool in_index_set(const NetworkConfig& cfg, int r, int t);

// Exact check of the splitting constraints: subfile masses sum to one
// whole file, per-receiver load <= mu_r, per-transmitter load <= mu_t.
SplitValidation validate_split(const NetworkConfig& cfg, const CachePoint& pt,
                               const SplitRatios& s);

// Left-hand sides of the three splitting constraints, in the order
// (total, rx_budget, tx_budget).
struct SplitLoads {
  Rat total;
  Rat rx_budget;
  Rat tx_budget;
};
SplitLoads split_loads(const NetworkConfig& cfg, const SplitRatios& s);

// All k-element subsets of {0,...,n-1} in lexicographic order, each sorted
// ascending. Shared by the cache simulator and the precoder verifier.
std::vector<std::vector<int>> subsets_of_size(int n, int k);

}  // namespace ndtopt
