#pragma once

#include <optional>
#include <vector>

#include "ndtopt/core.hpp"

namespace ndtopt {

// How the delivery scheme serves a subfile group (r, t):
//   Full         r+t >= n_rx   every interfering receiver neutralized, per-user DoF 1
//   OneResidual  r+t == n_rx-1 neutralization leaves one residual, aligned asymptotically
//   SplitOrAlign r+t <= n_rx-2 best of message splitting and neutralize-plus-align
enum class DofCase { Full, OneResidual, SplitOrAlign };

struct DofEntry {
  int r;
  int t;
  Rat per_user;
  DofCase dof_case;
  std::optional<int> best_t_prime;  // argmax cooperation size, SplitOrAlign only
};

// Per-user DoF of the C(n_tx,t) x C(n_rx,r+1) cooperative X-multicast
// channel. Requires 0 <= r <= n_rx-1 and 1 <= t <= n_tx.
DofEntry per_user_dof(const NetworkConfig& cfg, int r, int t);

// Sum DoF: n_rx/(r+1) times the per-user value (each message serves r+1
// receivers).
Rat sum_dof(const NetworkConfig& cfg, int r, int t);

// All delivery-relevant (r, t) cells in lexicographic order.
std::vector<DofEntry> dof_table(const NetworkConfig& cfg);

// One candidate of the neutralize-plus-align construction at cooperation
// size t_prime: value of the d' term before maximization. Requires
// r + t_prime <= n_rx - 1 so the denominators stay positive.
Rat split_align_term(const NetworkConfig& cfg, int r, int t_prime);

}  // namespace ndtopt
