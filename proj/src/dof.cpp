#include "ndtopt/dof.hpp"

#include <stdexcept>

namespace ndtopt {

Rat split_align_term(const NetworkConfig& cfg, int r, int t_prime) {
  if (t_prime < 1 || t_prime > cfg.n_tx || r < 0 || r + t_prime > cfg.n_rx - 1) {
    throw std::invalid_argument("split_align_term: parameters out of range");
  }
  const int nr = cfg.n_rx, nt = cfg.n_tx;
  mpz_class num = binomial(nr - 1, r) * binomial(nt, t_prime) * binomial(nr - r - 1, t_prime - 1) *
                  t_prime;
  mpz_class residual =
      binomial(nr - 1, r + 1) * binomial(nr - r - 2, t_prime - 1) * binomial(nt, t_prime - 1);
  return frac(num, num + residual);
}

DofEntry per_user_dof(const NetworkConfig& cfg, int r, int t) {
  if (r < 0 || r > cfg.n_rx - 1 || t < 1 || t > cfg.n_tx) {
    throw std::invalid_argument("per_user_dof: (r, t) out of range");
  }
  const int nr = cfg.n_rx, nt = cfg.n_tx;
  DofEntry entry{r, t, Rat(0), DofCase::Full, std::nullopt};
  if (r + t >= nr) {
    entry.dof_case = DofCase::Full;
    entry.per_user = 1;
  } else if (r + t == nr - 1) {
    entry.dof_case = DofCase::OneResidual;
    mpz_class num = binomial(nr - 1, r) * binomial(nt, t) * t;
    entry.per_user = frac(num, num + 1);
  } else {
    entry.dof_case = DofCase::SplitOrAlign;
    Rat best(-1);
    int best_tp = 1;
    for (int tp = 1; tp <= t; ++tp) {
      Rat candidate = split_align_term(cfg, r, tp);
      if (candidate > best) {  // ties keep the smallest cooperation size
        best = candidate;
        best_tp = tp;
      }
    }
    entry.best_t_prime = best_tp;
    Rat split = frac(r + t, nr);
    entry.per_user = std::max(best, split);
  }
  return entry;
}

Rat sum_dof(const NetworkConfig& cfg, int r, int t) {
  return frac(cfg.n_rx, r + 1) * per_user_dof(cfg, r, t).per_user;
}

std::vector<DofEntry> dof_table(const NetworkConfig& cfg) {
  std::vector<DofEntry> out;
  for (int r = 0; r <= cfg.n_rx - 1; ++r) {
    for (int t = 1; t <= cfg.n_tx; ++t) out.push_back(per_user_dof(cfg, r, t));
  }
  return out;
}

}  // namespace ndtopt
