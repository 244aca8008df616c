#include "ndtopt/core.hpp"

#include <stdexcept>

namespace ndtopt {

NetworkConfig::NetworkConfig(int n_tx_, int n_rx_, int n_files_)
    : n_tx(n_tx_), n_rx(n_rx_), n_files(n_files_) {
  if (n_tx < 2) throw std::invalid_argument("n_tx must be >= 2");
  if (n_rx < 2) throw std::invalid_argument("n_rx must be >= 2");
  if (n_files < n_rx) throw std::invalid_argument("n_files must be >= n_rx");
}

CachePoint::CachePoint(Rat mu_r_, Rat mu_t_) : mu_r(std::move(mu_r_)), mu_t(std::move(mu_t_)) {
  mu_r.canonicalize();
  mu_t.canonicalize();
  if (mu_r < 0 || mu_r > 1 || mu_t < 0 || mu_t > 1) {
    throw std::invalid_argument("cache sizes must lie in [0, 1]");
  }
}

Rat SplitRatios::get(int r, int t) const {
  auto it = ratios.find(CacheStateIndex{r, t});
  return it == ratios.end() ? Rat(0) : it->second;
}

void SplitRatios::set(int r, int t, Rat value) {
  value.canonicalize();
  ratios[CacheStateIndex{r, t}] = std::move(value);
}

mpz_class binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  mpz_class result;
  mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return result;
}

bool feasible_cache_point(const NetworkConfig& cfg, const CachePoint& pt) {
  if (pt.mu_r < 0 || pt.mu_r > 1 || pt.mu_t < 0 || pt.mu_t > 1) return false;
  return pt.mu_r + cfg.n_tx * pt.mu_t >= 1;
}

bool in_index_set(const NetworkConfig& cfg, int r, int t) {
  if (r < 0 || r > cfg.n_rx || t < 0 || t > cfg.n_tx) return false;
  return r + cfg.n_rx * t >= cfg.n_rx;
}

std::vector<CacheStateIndex> index_set(const NetworkConfig& cfg) {
  std::vector<CacheStateIndex> out;
  for (int r = 0; r <= cfg.n_rx; ++r) {
    for (int t = 0; t <= cfg.n_tx; ++t) {
      if (in_index_set(cfg, r, t)) out.push_back({r, t});
    }
  }
  return out;
}

SplitLoads split_loads(const NetworkConfig& cfg, const SplitRatios& s) {
  SplitLoads loads{Rat(0), Rat(0), Rat(0)};
  for (const auto& [idx, a] : s.ratios) {
    const int r = idx.r, t = idx.t;
    if (r == cfg.n_rx && t == 0) {
      loads.total += a;
      loads.rx_budget += a;
      continue;
    }
    loads.total += Rat(binomial(cfg.n_rx, r) * binomial(cfg.n_tx, t)) * a;
    if (r >= 1) loads.rx_budget += Rat(binomial(cfg.n_rx - 1, r - 1) * binomial(cfg.n_tx, t)) * a;
    if (t >= 1) loads.tx_budget += Rat(binomial(cfg.n_rx, r) * binomial(cfg.n_tx - 1, t - 1)) * a;
  }
  return loads;
}

SplitValidation validate_split(const NetworkConfig& cfg, const CachePoint& pt,
                               const SplitRatios& s) {
  SplitValidation result;
  for (const auto& [idx, a] : s.ratios) {
    if (!in_index_set(cfg, idx.r, idx.t)) {
      result.violations.push_back({"membership",
                                   "(" + std::to_string(idx.r) + "," + std::to_string(idx.t) +
                                       ") is not an admissible cache state",
                                   a});
    }
    if (a < 0 || a > 1) {
      result.violations.push_back({"range",
                                   "ratio for (" + std::to_string(idx.r) + "," +
                                       std::to_string(idx.t) + ") outside [0, 1]",
                                   a});
    }
  }
  SplitLoads loads = split_loads(cfg, s);
  if (loads.total != 1) {
    result.violations.push_back({"total", "subfile masses must sum to 1", loads.total});
  }
  if (loads.rx_budget > pt.mu_r) {
    result.violations.push_back({"rx_budget", "per-receiver load exceeds mu_r", loads.rx_budget});
  }
  if (loads.tx_budget > pt.mu_t) {
    result.violations.push_back({"tx_budget", "per-transmitter load exceeds mu_t", loads.tx_budget});
  }
  return result;
}

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

}  // namespace ndtopt
