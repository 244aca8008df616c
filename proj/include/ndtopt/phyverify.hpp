#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "ndtopt/core.hpp"
#include "ndtopt/dof.hpp"

namespace ndtopt {

using Complex = std::complex<double>;

inline constexpr double kNeutralizationTol = 1e-9;  // relative to largest desired coefficient
inline constexpr double kRankTol = 1e-9;            // min/max singular value, unit-norm columns
inline constexpr double kDecodeTol = 1e-6;          // relative symbol recovery error
inline constexpr long kMaxExtension = 4096;         // symbol-extension guard

// Seeded i.i.d. CN(0,1) channel over a block of symbol-extension slots.
struct ChannelRealization {
  int slots = 0;
  int n_rx = 0;
  int n_tx = 0;
  std::vector<Eigen::MatrixXcd> coeffs;  // per slot, n_rx x n_tx, no exact zeros
};

ChannelRealization sample_channel(const NetworkConfig& cfg, int slots, std::uint64_t seed);

// Cofactor weights of the bordered neutralization matrix whose rows are
// the neutralized receivers' channel rows over tx_set plus a symbolic last
// row. Weighted transmission sums to zero at every neutralized receiver;
// at any other receiver it equals the bordered determinant with that
// receiver's row substituted in. Requires |tx_set| == |neutralize_rx| + 1.
Eigen::VectorXcd cofactor_precoder(const Eigen::MatrixXcd& h_slot,
                                   const std::vector<int>& neutralize_rx,
                                   const std::vector<int>& tx_set);

// Received factor sum_p h(rx, tx_set[p]) * c_p for the weights above.
Complex bordered_received(const Eigen::MatrixXcd& h_slot, const std::vector<int>& neutralize_rx,
                          const std::vector<int>& tx_set, int rx);

// The four achievability constructions, keyed by how they handle the
// interference left after transmitter cooperation:
enum class SchemeKind {
  Neutralize,       // r+t >= n_rx: every undesired receiver neutralized
  NeutralizeAlign,  // r+t == n_rx-1: one residual receiver, aligned asymptotically
  SplitAlign,       // r+t <= n_rx-2, t < n_tx: symbol split + neutralize + align
  SplitNeutralize,  // r+t <= n_rx-2, t == n_tx: symbol split + neutralize, finite extension
};

// The construction that serves group (r, t) in the delivery scheme.
SchemeKind natural_scheme(const NetworkConfig& cfg, int r, int t);

struct SchemeSymbol {
  std::vector<int> rx_group;        // desired receivers, size r+1
  std::vector<int> tx_group;        // transmitters that actually send it
  std::vector<int> neutralize_set;  // receivers where it is cancelled exactly
  int tc_block = -1;                // SplitAlign: tx sub-block of the alignment monomial
  std::vector<int> exponents;       // aligned kinds: z-monomial exponent vector
};

struct PrecoderScheme {
  SchemeKind kind = SchemeKind::Neutralize;
  int r = 0, t = 0, n_levels = 0;
  long slots = 0;            // symbol-extension length S
  long desired_per_rx = 0;   // desired symbols per receiver
  std::vector<SchemeSymbol> symbols;
  std::vector<Eigen::MatrixXcd> precoders;  // per symbol: |tx_group| x slots
};

struct SchemeCheck {
  long slots = 0;
  long desired_per_rx = 0;
  double max_neutralization_residual = 0.0;
  double min_rank_ratio = 0.0;
  double max_decode_rel_error = 0.0;
  bool neutralization_ok = false;
  bool rank_ok = false;
  bool decode_ok = false;
  bool alignment_ok = false;  // symbolic monomial membership (aligned kinds)
  bool dof_matches = false;   // constructed counts reproduce the closed-form DoF
  Rat finite_dof;
  Rat limit_dof;

  bool all_ok() const {
    return neutralization_ok && rank_ok && decode_ok && alignment_ok && dof_matches;
  }
};

struct SchemeBuild {
  PrecoderScheme scheme;
  SchemeCheck check;
};

// Instantiates the construction on a seeded channel and runs the full
// verification: neutralization residuals, per-receiver rank, symbolic
// alignment membership, decoding round-trip, and the DoF bookkeeping.
SchemeBuild build_scheme(const NetworkConfig& cfg, int r, int t, int n_levels, SchemeKind kind,
                         std::uint64_t seed);

// Exact achieved fraction desired/slots at finite alignment level N.
Rat finite_n_dof(const NetworkConfig& cfg, int r, int t, int n_levels, SchemeKind kind);

// Symbolic N->infinity limit (ratio of leading terms).
Rat limit_dof(const NetworkConfig& cfg, int r, int t, SchemeKind kind);

}  // namespace ndtopt
