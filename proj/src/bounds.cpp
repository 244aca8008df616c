#include "ndtopt/bounds.hpp"

#include <stdexcept>

#include "ndtopt/dof.hpp"

namespace ndtopt {

namespace {

Rat positive_part(const Rat& v) { return v > 0 ? v : Rat(0); }

// Shared scan for both lower bounds; the extra term is zero for the coded
// variant.
LowerBoundResult lower_bound_scan(const NetworkConfig& cfg, const CachePoint& pt,
                                  bool uncoded_penalty) {
  const int nt = cfg.n_tx, nr = cfg.n_rx;
  const Rat common_bits = positive_part(Rat(1) - nt * pt.mu_t);
  LowerBoundResult best;
  bool first = true;
  for (int l = 1; l <= std::min(nt, nr); ++l) {
    for (int s1 = 0; s1 <= l; ++s1) {
      for (int s2 = 0; s2 <= nr - l; ++s2) {
        Rat value = Rat(s1 + s2) - Rat((nt - l) * s2) * pt.mu_t -
                    (frac(2 * s2 + s1 + 1, 2) * s1 + Rat(s2 * s2)) * pt.mu_r;
        if (uncoded_penalty) {
          value += (frac(2 * s2 + s1, 2) * (s1 - 1) + Rat(s2 * s2)) * common_bits;
        }
        value /= l;
        if (first || value > best.tau) {
          first = false;
          best = {value, l, s1, s2};
        }
      }
    }
  }
  best.tau = positive_part(best.tau);
  return best;
}

}  // namespace

LinearProgram assemble_ndt_lp(const NetworkConfig& cfg, const CachePoint& pt) {
  if (!feasible_cache_point(cfg, pt)) {
    throw std::invalid_argument("infeasible cache point: needs mu_r + n_tx*mu_t >= 1");
  }
  const auto states = index_set(cfg);
  const int n = static_cast<int>(states.size());
  LinearProgram lp;
  lp.objective.assign(n, Rat(0));
  lp.var_bounds.assign(n, {Rat(0), Rat(1)});
  std::vector<Rat> total(n, Rat(0)), rx(n, Rat(0)), tx(n, Rat(0));
  for (int j = 0; j < n; ++j) {
    const auto [r, t] = states[j];
    if (r == cfg.n_rx && t == 0) {
      total[j] = 1;
      rx[j] = 1;
      continue;
    }
    total[j] = Rat(binomial(cfg.n_rx, r) * binomial(cfg.n_tx, t));
    if (r >= 1) rx[j] = Rat(binomial(cfg.n_rx - 1, r - 1) * binomial(cfg.n_tx, t));
    tx[j] = Rat(binomial(cfg.n_rx, r) * binomial(cfg.n_tx - 1, t - 1));
    if (r <= cfg.n_rx - 1) {
      Rat group_messages(binomial(cfg.n_rx - 1, r) * binomial(cfg.n_tx, t));
      lp.objective[j] = group_messages / per_user_dof(cfg, r, t).per_user;
    }
  }
  lp.eq_rows.push_back({std::move(total), Rat(1)});
  lp.le_rows.push_back({std::move(rx), pt.mu_r});
  lp.le_rows.push_back({std::move(tx), pt.mu_t});
  return lp;
}

std::pair<Rat, SplitRatios> ndt_upper(const NetworkConfig& cfg, const CachePoint& pt) {
  LinearProgram lp = assemble_ndt_lp(cfg, pt);
  LpSolution sol = solve(lp);
  if (sol.status != LpStatus::optimal) {
    throw std::logic_error("delivery-time LP unsolvable at a feasible cache point");
  }
  SplitRatios ratios;
  const auto states = index_set(cfg);
  for (size_t j = 0; j < states.size(); ++j) {
    if (sol.point[j] != 0) ratios.set(states[j].r, states[j].t, sol.point[j]);
  }
  if (!validate_split(cfg, pt, ratios).ok()) {
    throw std::logic_error("LP vertex fails split validation");
  }
  return {sol.value, ratios};
}

Rat ndt_from_ratios(const NetworkConfig& cfg, const SplitRatios& s) {
  Rat tau(0);
  for (const auto& [idx, a] : s.ratios) {
    if (!in_index_set(cfg, idx.r, idx.t)) {
      throw std::invalid_argument("ratio outside the admissible cache states");
    }
    if (idx.r > cfg.n_rx - 1 || idx.t < 1) continue;  // nothing to deliver
    Rat group_messages(binomial(cfg.n_rx - 1, idx.r) * binomial(cfg.n_tx, idx.t));
    tau += group_messages / per_user_dof(cfg, idx.r, idx.t).per_user * a;
  }
  return tau;
}

LowerBoundResult ndt_lower_coded(const NetworkConfig& cfg, const CachePoint& pt) {
  return lower_bound_scan(cfg, pt, false);
}

LowerBoundResult ndt_lower_uncoded(const NetworkConfig& cfg, const CachePoint& pt) {
  return lower_bound_scan(cfg, pt, true);
}

std::optional<OptimalityResult> optimality_check(const NetworkConfig& cfg, const CachePoint& pt,
                                                 bool allow_intra_file_coding) {
  const int nt = cfg.n_tx, nr = cfg.n_rx;
  std::vector<OptimalityResult> matches;
  if (nr * pt.mu_r + nt * pt.mu_t >= nr) {
    matches.push_back({1, Rat(1) - pt.mu_r});
  }
  if (pt.mu_r == 0 && pt.mu_t == 1) {
    matches.push_back({2, frac(nr, std::min(nt, nr))});
  }
  if (pt.mu_r == 0 && pt.mu_t == frac(1, nt)) {
    matches.push_back({3, frac(nt + nr - 1, nt)});
  }
  if (!allow_intra_file_coding && pt.mu_r + nt * pt.mu_t == 1) {
    matches.push_back({4, frac(nt + nr - 1, nt) * (Rat(1) - pt.mu_r)});
  }
  if (matches.empty()) return std::nullopt;
  for (const auto& m : matches) {
    if (m.tau_star != matches.front().tau_star) {
      throw std::logic_error("overlapping optimality cases disagree");
    }
  }
  return matches.front();
}

GapResult gap(const NetworkConfig& cfg, const CachePoint& pt) {
  GapResult result;
  const int nt = cfg.n_tx, nr = cfg.n_rx;
  if (nt >= nr) {
    result.bound_class = GapBoundClass::TxAtLeastRx;
    result.bound_value = 2;
  } else if (pt.mu_t >= frac(1, nt)) {
    result.bound_class = GapBoundClass::LargeTxCache;
    result.bound_value = 12;
  } else {
    result.bound_class = GapBoundClass::SmallTxCache;
    result.bound_value = frac(nt + nr - 1, nt);
  }
  Rat upper = ndt_upper(cfg, pt).first;
  Rat lower = ndt_lower_coded(cfg, pt).tau;
  if (lower == 0) {
    if (upper != 0) throw std::logic_error("zero lower bound with positive upper bound");
    result.both_zero = true;
    result.gap = 1;
  } else {
    result.both_zero = false;
    result.gap = upper / lower;
  }
  return result;
}

NdtReport compute_report(const NetworkConfig& cfg, const CachePoint& pt,
                         bool allow_intra_file_coding) {
  NdtReport report;
  auto [tau, ratios] = ndt_upper(cfg, pt);
  report.tau_upper = std::move(tau);
  report.ratios = std::move(ratios);
  report.lower_coded = ndt_lower_coded(cfg, pt);
  report.tau_lower_coded = report.lower_coded.tau;
  report.lower_uncoded = ndt_lower_uncoded(cfg, pt);
  report.tau_lower_uncoded = report.lower_uncoded.tau;
  report.optimality = optimality_check(cfg, pt, allow_intra_file_coding);
  report.gap = gap(cfg, pt);
  return report;
}

}  // namespace ndtopt
