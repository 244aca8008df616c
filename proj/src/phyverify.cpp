#include "ndtopt/phyverify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace ndtopt {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + salt + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Box-Muller on raw mt19937_64 bits; std::normal_distribution is not
// reproducible across standard libraries.
class ComplexGaussian {
 public:
  explicit ComplexGaussian(std::uint64_t seed) : rng_(seed) {}

  Complex operator()() {
    double u1 = ((rng_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    double u2 = (rng_() >> 11) * 0x1.0p-53;          // [0, 1)
    double radius = std::sqrt(-std::log(u1));        // CN(0,1): E|z|^2 = 1
    return {radius * std::cos(2.0 * M_PI * u2), radius * std::sin(2.0 * M_PI * u2)};
  }

 private:
  std::mt19937_64 rng_;
};

mpz_class ipow(long base, unsigned long exp) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), exp);
  return out;
}

std::vector<int> complement(int n, const std::vector<int>& sorted_set) {
  std::vector<int> out;
  size_t k = 0;
  for (int v = 0; v < n; ++v) {
    if (k < sorted_set.size() && sorted_set[k] == v) {
      ++k;
    } else {
      out.push_back(v);
    }
  }
  return out;
}

std::vector<int> set_union_sorted(std::vector<int> a, int extra) {
  a.push_back(extra);
  std::sort(a.begin(), a.end());
  return a;
}

// Digits of index in base `radix`, offset by +1: exponent vectors run over
// [1..radix]^k in a fixed order.
std::vector<int> exponent_vector(long index, int k, int radix) {
  std::vector<int> e(k);
  for (int i = 0; i < k; ++i) {
    e[i] = static_cast<int>(index % radix) + 1;
    index /= radix;
  }
  return e;
}

struct MonomialFamily {
  // factor_values(k, u): k-th base factor at slot u
  Eigen::MatrixXcd factor_values;

  Complex monomial(const std::vector<int>& exps, int slot) const {
    Complex m(1.0, 0.0);
    for (size_t k = 0; k < exps.size(); ++k) {
      Complex f = factor_values(static_cast<long>(k), slot);
      for (int e = 0; e < exps[k]; ++e) m *= f;
    }
    return m;
  }
};

class SchemeBuilder {
 public:
  SchemeBuilder(const NetworkConfig& cfg, int r, int t, int n_levels, SchemeKind kind,
                std::uint64_t seed)
      : cfg_(cfg), r_(r), t_(t), n_(n_levels), kind_(kind), seed_(seed) {}

  SchemeBuild run() {
    validate_params();
    dimensions();
    channel_ = sample_channel(cfg_, static_cast<int>(slots_), seed_);
    sample_alphas();
    build_families();
    build_symbols();
    compute_coefficients();
    return verify();
  }

 private:
  void validate_params() {
    const int nr = cfg_.n_rx, nt = cfg_.n_tx;
    if (r_ < 0 || r_ > nr - 1 || t_ < 1 || t_ > nt) {
      throw std::invalid_argument("scheme (r, t) out of range");
    }
    switch (kind_) {
      case SchemeKind::Neutralize:
        if (r_ + t_ < nr) throw std::invalid_argument("neutralize-only needs r+t >= n_rx");
        break;
      case SchemeKind::NeutralizeAlign:
        if (r_ + t_ != nr - 1) throw std::invalid_argument("neutralize+align needs r+t == n_rx-1");
        if (n_ < 1) throw std::invalid_argument("alignment level must be >= 1");
        break;
      case SchemeKind::SplitAlign:
        if (r_ + t_ > nr - 2) throw std::invalid_argument("split+align needs r+t <= n_rx-2");
        if (t_ >= nt) throw std::invalid_argument("split+align needs t < n_tx");
        if (n_ < 1) throw std::invalid_argument("alignment level must be >= 1");
        break;
      case SchemeKind::SplitNeutralize:
        if (r_ + t_ > nr - 2) throw std::invalid_argument("split-neutralize needs r+t <= n_rx-2");
        if (t_ != nt) throw std::invalid_argument("split-neutralize needs t == n_tx");
        break;
    }
  }

  void dimensions() {
    const int nr = cfg_.n_rx, nt = cfg_.n_tx;
    rx_groups_ = subsets_of_size(nr, r_ + 1);
    tx_groups_ = subsets_of_size(nt, t_);
    for (size_t i = 0; i < tx_groups_.size(); ++i) tx_group_index_[tx_groups_[i]] = (int)i;

    mpz_class s0, s;
    switch (kind_) {
      case SchemeKind::Neutralize:
        k_exp_ = 0;
        s0 = binomial(nr - 1, r_);
        s = s0;
        break;
      case SchemeKind::NeutralizeAlign: {
        mpz_class k = binomial(nr - 1, r_ + 1) * binomial(nt, t_);
        if (k > 64) throw std::invalid_argument("symbol extension exceeds the 4096-slot guard");
        k_exp_ = static_cast<int>(k.get_si());
        s0 = binomial(nr - 1, r_) * binomial(nt, t_) * t_ * ipow(n_, k_exp_);
        s = s0 + ipow(n_ + 1, k_exp_);
        break;
      }
      case SchemeKind::SplitAlign: {
        k_exp_ = (nr - r_ - t_) * (nt - t_ + 1);
        if (k_exp_ > 64) throw std::invalid_argument("symbol extension exceeds the 4096-slot guard");
        rho_ = static_cast<int>(binomial(nr - r_ - 1, t_ - 1).get_si());
        s0 = binomial(nr - 1, r_) * binomial(nt, t_) * rho_ * t_ * ipow(n_, k_exp_);
        s = s0 + binomial(nr - 1, r_ + 1) * binomial(nr - r_ - 2, t_ - 1) *
                     binomial(nt, t_ - 1) * ipow(n_ + 1, k_exp_);
        break;
      }
      case SchemeKind::SplitNeutralize: {
        k_exp_ = 0;
        rho_ = static_cast<int>(binomial(nr - r_ - 1, nt - 1).get_si());
        s0 = binomial(nr - 1, r_) * binomial(nr - r_ - 1, nt - 1);
        s = s0 + binomial(nr - 1, r_ + 1) * binomial(nr - r_ - 2, nt - 1);
        break;
      }
    }
    if (s > kMaxExtension) {
      throw std::invalid_argument("symbol extension exceeds the 4096-slot guard");
    }
    slots_ = s.get_si();
    desired_ = s0.get_si();
    monomials_per_symbol_ = (k_exp_ > 0) ? ipow(n_, k_exp_).get_si() : 1;
  }

  void sample_alphas() {
    long streams = 0;
    switch (kind_) {
      case SchemeKind::Neutralize:
        streams = 0;
        break;
      case SchemeKind::NeutralizeAlign:
        streams = static_cast<long>(rx_groups_.size() * tx_groups_.size()) * t_;
        break;
      case SchemeKind::SplitAlign:
        streams = static_cast<long>(rx_groups_.size() * tx_groups_.size()) * rho_;
        break;
      case SchemeKind::SplitNeutralize:
        streams = static_cast<long>(rx_groups_.size()) * rho_;
        break;
    }
    alphas_.resize(streams, slots_);
    ComplexGaussian gen(mix_seed(seed_, 0xa1fa));
    for (long s = 0; s < streams; ++s) {
      for (long u = 0; u < slots_; ++u) alphas_(s, u) = gen();
    }
  }

  long alpha_stream(int rx_idx, int tx_idx, int i) const {
    switch (kind_) {
      case SchemeKind::NeutralizeAlign:
        return (static_cast<long>(rx_idx) * tx_groups_.size() + tx_idx) * t_ + i;
      case SchemeKind::SplitAlign:
        return (static_cast<long>(rx_idx) * tx_groups_.size() + tx_idx) * rho_ + i;
      case SchemeKind::SplitNeutralize:
        return static_cast<long>(rx_idx) * rho_ + i;
      default:
        return -1;
    }
  }

  // Monomial bases for the aligned kinds. NeutralizeAlign keys a family by
  // the residual receiver; SplitAlign by (rx group, neutralize set, tx
  // sub-block), with one base factor per (extra transmitter, residual
  // receiver) pair.
  void build_families() {
    if (kind_ == SchemeKind::NeutralizeAlign) {
      const int nr = cfg_.n_rx;
      families_.resize(nr);
      for (int q = 0; q < nr; ++q) {
        MonomialFamily fam;
        fam.factor_values.resize(k_exp_, slots_);
        long k = 0;
        for (size_t ri = 0; ri < rx_groups_.size(); ++ri) {
          const auto& rg = rx_groups_[ri];
          if (std::binary_search(rg.begin(), rg.end(), q)) continue;
          std::vector<int> undesired = complement(nr, rg);
          int pos_q = static_cast<int>(
              std::lower_bound(undesired.begin(), undesired.end(), q) - undesired.begin());
          std::vector<int> neut = undesired;
          neut.erase(neut.begin() + pos_q);
          for (size_t ti = 0; ti < tx_groups_.size(); ++ti) {
            const long stream = alpha_stream(static_cast<int>(ri), static_cast<int>(ti), pos_q);
            base_factor_index_[{static_cast<int>(ri), static_cast<int>(ti), q}] = k;
            for (long u = 0; u < slots_; ++u) {
              fam.factor_values(k, u) =
                  alphas_(stream, u) *
                  bordered_received(channel_.coeffs[u], neut, tx_groups_[ti], q);
            }
            ++k;
          }
        }
        if (k != k_exp_) throw std::logic_error("base factor count mismatch");
        families_[q] = std::move(fam);
      }
      return;
    }
    if (kind_ != SchemeKind::SplitAlign) return;

    const int nr = cfg_.n_rx, nt = cfg_.n_tx;
    tc_blocks_ = subsets_of_size(nt, t_ - 1);
    for (size_t ci = 0; ci < tc_blocks_.size(); ++ci) tc_index_[tc_blocks_[ci]] = (int)ci;
    for (size_t ri = 0; ri < rx_groups_.size(); ++ri) {
      const auto& rg = rx_groups_[ri];
      std::vector<int> undesired = complement(nr, rg);
      auto neut_choices = subsets_of_size(static_cast<int>(undesired.size()), t_ - 1);
      for (size_t ni = 0; ni < neut_choices.size(); ++ni) {
        std::vector<int> neut;
        for (int pos : neut_choices[ni]) neut.push_back(undesired[pos]);
        std::vector<int> blocked = rg;
        blocked.insert(blocked.end(), neut.begin(), neut.end());
        std::sort(blocked.begin(), blocked.end());
        std::vector<int> residual = complement(nr, blocked);
        for (size_t ci = 0; ci < tc_blocks_.size(); ++ci) {
          const auto& tc = tc_blocks_[ci];
          std::vector<int> extra_tx = complement(nt, tc);
          MonomialFamily fam;
          fam.factor_values.resize(k_exp_, slots_);
          long k = 0;
          for (int p : extra_tx) {
            std::vector<int> full_tx = set_union_sorted(tc, p);
            const int ti = tx_group_index_.at(full_tx);
            const long stream = alpha_stream(static_cast<int>(ri), ti, static_cast<int>(ni));
            for (int q : residual) {
              split_factor_index_[{static_cast<int>(ri), static_cast<int>(ni),
                                   static_cast<int>(ci), p, q}] = k;
              for (long u = 0; u < slots_; ++u) {
                fam.factor_values(k, u) =
                    alphas_(stream, u) * bordered_received(channel_.coeffs[u], neut, full_tx, q);
              }
              ++k;
            }
          }
          if (k != k_exp_) throw std::logic_error("base factor count mismatch");
          split_family_index_[{static_cast<int>(ri), static_cast<int>(ni), static_cast<int>(ci)}] =
              static_cast<int>(families_.size());
          families_.push_back(std::move(fam));
        }
      }
    }
  }

  struct Sym {
    int rx_idx, tx_idx;
    std::vector<int> rx, tx, neut, residual;
    long stream = -1;
    int neut_idx = 0;   // which neutralize-set choice
    int tc_block = -1;  // SplitAlign sub-block (index into tc_blocks_)
    std::vector<int> exps;
    int family = -1;
  };

  void build_symbols() {
    const int nr = cfg_.n_rx;
    switch (kind_) {
      case SchemeKind::Neutralize: {
        // Only n_rx - r transmitters of the group cooperate; the rest are
        // deactivated because r+t-n_rx of them are redundant.
        std::vector<int> active(tx_groups_[0].begin(), tx_groups_[0].begin() + (nr - r_));
        for (size_t ri = 0; ri < rx_groups_.size(); ++ri) {
          Sym s;
          s.rx_idx = static_cast<int>(ri);
          s.tx_idx = 0;
          s.rx = rx_groups_[ri];
          s.tx = active;
          s.neut = complement(nr, s.rx);
          syms_.push_back(std::move(s));
        }
        break;
      }
      case SchemeKind::NeutralizeAlign: {
        for (size_t ri = 0; ri < rx_groups_.size(); ++ri) {
          std::vector<int> undesired = complement(nr, rx_groups_[ri]);
          for (size_t ti = 0; ti < tx_groups_.size(); ++ti) {
            for (int i = 0; i < t_; ++i) {
              for (long m = 0; m < monomials_per_symbol_; ++m) {
                Sym s;
                s.rx_idx = static_cast<int>(ri);
                s.tx_idx = static_cast<int>(ti);
                s.rx = rx_groups_[ri];
                s.tx = tx_groups_[ti];
                s.neut = undesired;
                s.neut.erase(s.neut.begin() + i);
                s.residual = {undesired[i]};
                s.neut_idx = i;
                s.stream = alpha_stream(s.rx_idx, s.tx_idx, i);
                s.exps = exponent_vector(m, k_exp_, n_);
                s.family = undesired[i];  // z drawn from the residual receiver's base
                syms_.push_back(std::move(s));
              }
            }
          }
        }
        break;
      }
      case SchemeKind::SplitAlign: {
        for (size_t ri = 0; ri < rx_groups_.size(); ++ri) {
          std::vector<int> undesired = complement(nr, rx_groups_[ri]);
          auto neut_choices = subsets_of_size(static_cast<int>(undesired.size()), t_ - 1);
          for (size_t ti = 0; ti < tx_groups_.size(); ++ti) {
            for (size_t ni = 0; ni < neut_choices.size(); ++ni) {
              std::vector<int> neut;
              for (int pos : neut_choices[ni]) neut.push_back(undesired[pos]);
              std::vector<int> blocked = rx_groups_[ri];
              blocked.insert(blocked.end(), neut.begin(), neut.end());
              std::sort(blocked.begin(), blocked.end());
              std::vector<int> residual = complement(nr, blocked);
              // one z sub-block per (t-1)-subset of the tx group
              for (int drop = 0; drop < t_; ++drop) {
                std::vector<int> tc = tx_groups_[ti];
                tc.erase(tc.begin() + drop);
                const int ci = tc_index_.at(tc);
                for (long m = 0; m < monomials_per_symbol_; ++m) {
                  Sym s;
                  s.rx_idx = static_cast<int>(ri);
                  s.tx_idx = static_cast<int>(ti);
                  s.rx = rx_groups_[ri];
                  s.tx = tx_groups_[ti];
                  s.neut = neut;
                  s.residual = residual;
                  s.neut_idx = static_cast<int>(ni);
                  s.tc_block = ci;
                  s.stream = alpha_stream(s.rx_idx, s.tx_idx, static_cast<int>(ni));
                  s.exps = exponent_vector(m, k_exp_, n_);
                  s.family = split_family_index_.at({s.rx_idx, static_cast<int>(ni), ci});
                  syms_.push_back(std::move(s));
                }
              }
            }
          }
        }
        break;
      }
      case SchemeKind::SplitNeutralize: {
        for (size_t ri = 0; ri < rx_groups_.size(); ++ri) {
          std::vector<int> undesired = complement(nr, rx_groups_[ri]);
          auto neut_choices = subsets_of_size(static_cast<int>(undesired.size()), t_ - 1);
          for (size_t ni = 0; ni < neut_choices.size(); ++ni) {
            Sym s;
            s.rx_idx = static_cast<int>(ri);
            s.tx_idx = 0;
            s.rx = rx_groups_[ri];
            s.tx = tx_groups_[0];  // the full transmitter set
            for (int pos : neut_choices[ni]) s.neut.push_back(undesired[pos]);
            std::vector<int> blocked = s.rx;
            blocked.insert(blocked.end(), s.neut.begin(), s.neut.end());
            std::sort(blocked.begin(), blocked.end());
            s.residual = complement(nr, blocked);
            s.neut_idx = static_cast<int>(ni);
            s.stream = alpha_stream(s.rx_idx, 0, static_cast<int>(ni));
            syms_.push_back(std::move(s));
          }
        }
        break;
      }
    }
  }

  void compute_coefficients() {
    coef_.resize(syms_.size());
    precoders_.resize(syms_.size());
    for (size_t si = 0; si < syms_.size(); ++si) {
      const Sym& s = syms_[si];
      const int w = static_cast<int>(s.tx.size());
      Eigen::MatrixXcd v(w, slots_);
      for (long u = 0; u < slots_; ++u) {
        Eigen::VectorXcd c = cofactor_precoder(channel_.coeffs[u], s.neut, s.tx);
        Complex scale(1.0, 0.0);
        if (s.stream >= 0) scale *= alphas_(s.stream, u);
        if (!s.exps.empty()) scale *= families_[s.family].monomial(s.exps, static_cast<int>(u));
        v.col(u) = c * scale;
      }
      Eigen::MatrixXcd coef(cfg_.n_rx, slots_);
      for (long u = 0; u < slots_; ++u) {
        for (int q = 0; q < cfg_.n_rx; ++q) {
          Complex sum(0.0, 0.0);
          for (int p = 0; p < w; ++p) sum += channel_.coeffs[u](q, s.tx[p]) * v(p, u);
          coef(q, u) = sum;
        }
      }
      precoders_[si] = std::move(v);
      coef_[si] = std::move(coef);
    }
  }

  // Interference columns of receiver q, in a deterministic order.
  std::vector<Eigen::VectorXcd> interference_columns(int q) const {
    std::vector<Eigen::VectorXcd> cols;
    const int nr = cfg_.n_rx;
    switch (kind_) {
      case SchemeKind::Neutralize:
        break;
      case SchemeKind::SplitNeutralize: {
        for (size_t si = 0; si < syms_.size(); ++si) {
          const Sym& s = syms_[si];
          if (std::find(s.residual.begin(), s.residual.end(), q) == s.residual.end()) continue;
          cols.push_back(coef_[si].row(q).transpose());
        }
        break;
      }
      case SchemeKind::NeutralizeAlign: {
        const long count = ipow(n_ + 1, k_exp_).get_si();
        for (long m = 0; m < count; ++m) {
          std::vector<int> exps = exponent_vector(m, k_exp_, n_ + 1);
          Eigen::VectorXcd col(slots_);
          for (long u = 0; u < slots_; ++u) {
            col(u) = families_[q].monomial(exps, static_cast<int>(u));
          }
          cols.push_back(std::move(col));
        }
        break;
      }
      case SchemeKind::SplitAlign: {
        const long count = ipow(n_ + 1, k_exp_).get_si();
        for (size_t ri = 0; ri < rx_groups_.size(); ++ri) {
          const auto& rg = rx_groups_[ri];
          if (std::binary_search(rg.begin(), rg.end(), q)) continue;
          std::vector<int> undesired = complement(nr, rg);
          auto neut_choices = subsets_of_size(static_cast<int>(undesired.size()), t_ - 1);
          for (size_t ni = 0; ni < neut_choices.size(); ++ni) {
            bool hits_q = false;
            for (int pos : neut_choices[ni]) hits_q |= (undesired[pos] == q);
            if (hits_q) continue;
            for (size_t ci = 0; ci < tc_blocks_.size(); ++ci) {
              const int fam =
                  split_family_index_.at({static_cast<int>(ri), static_cast<int>(ni),
                                          static_cast<int>(ci)});
              for (long m = 0; m < count; ++m) {
                std::vector<int> exps = exponent_vector(m, k_exp_, n_ + 1);
                Eigen::VectorXcd col(slots_);
                for (long u = 0; u < slots_; ++u) {
                  col(u) = families_[fam].monomial(exps, static_cast<int>(u));
                }
                cols.push_back(std::move(col));
              }
            }
          }
        }
        break;
      }
    }
    return cols;
  }

  // Symbolic alignment membership: the received factor of every residual
  // interferer must be a monomial of the receiver's level-(N+1) set.
  bool alignment_membership() const {
    if (kind_ == SchemeKind::Neutralize || kind_ == SchemeKind::SplitNeutralize) return true;
    for (const Sym& s : syms_) {
      for (int q : s.residual) {
        long bump = -1;
        if (kind_ == SchemeKind::NeutralizeAlign) {
          auto it = base_factor_index_.find({s.rx_idx, s.tx_idx, q});
          if (it == base_factor_index_.end()) return false;
          if (s.family != q) return false;  // z must come from the residual receiver's base
          bump = it->second;
        } else {
          // the received factor multiplies base pair (extra transmitter, q)
          std::vector<int> tc = tc_blocks_[s.tc_block];
          std::vector<int> extra;
          for (int p : s.tx) {
            if (!std::binary_search(tc.begin(), tc.end(), p)) extra.push_back(p);
          }
          if (extra.size() != 1) return false;
          auto it = split_factor_index_.find({s.rx_idx, s.neut_idx, s.tc_block, extra[0], q});
          if (it == split_factor_index_.end()) return false;
          bump = it->second;
        }
        std::vector<int> bumped = s.exps;
        bumped[bump] += 1;
        for (int e : bumped) {
          if (e < 1 || e > n_ + 1) return false;
        }
      }
    }
    return true;
  }

  SchemeBuild verify() {
    SchemeBuild out;
    out.scheme.kind = kind_;
    out.scheme.r = r_;
    out.scheme.t = t_;
    out.scheme.n_levels = n_;
    out.scheme.slots = slots_;
    out.scheme.desired_per_rx = desired_;
    for (size_t si = 0; si < syms_.size(); ++si) {
      const Sym& s = syms_[si];
      out.scheme.symbols.push_back({s.rx, s.tx, s.neut, s.tc_block, s.exps});
      out.scheme.precoders.push_back(precoders_[si]);
    }

    SchemeCheck& check = out.check;
    check.slots = slots_;
    check.desired_per_rx = desired_;

    double max_desired = 0.0;
    for (size_t si = 0; si < syms_.size(); ++si) {
      for (int q : syms_[si].rx) {
        max_desired = std::max(max_desired, coef_[si].row(q).cwiseAbs().maxCoeff());
      }
    }
    double worst_residual = 0.0;
    for (size_t si = 0; si < syms_.size(); ++si) {
      for (int q : syms_[si].neut) {
        worst_residual = std::max(worst_residual, coef_[si].row(q).cwiseAbs().maxCoeff());
      }
    }
    check.max_neutralization_residual = worst_residual / max_desired;
    check.neutralization_ok = check.max_neutralization_residual < kNeutralizationTol;

    check.alignment_ok = alignment_membership();

    ComplexGaussian phase(mix_seed(seed_, 0x5b1e));
    Eigen::VectorXcd tx_symbols(syms_.size());
    for (long i = 0; i < tx_symbols.size(); ++i) {
      Complex g = phase();
      tx_symbols(i) = g / std::abs(g);  // unit power
    }

    check.min_rank_ratio = 1.0;
    check.max_decode_rel_error = 0.0;
    for (int q = 0; q < cfg_.n_rx; ++q) {
      std::vector<long> desired_syms;
      for (size_t si = 0; si < syms_.size(); ++si) {
        if (std::binary_search(syms_[si].rx.begin(), syms_[si].rx.end(), q)) {
          desired_syms.push_back(static_cast<long>(si));
        }
      }
      if (static_cast<long>(desired_syms.size()) != desired_) {
        throw std::logic_error("desired symbol count disagrees with the extension bookkeeping");
      }
      auto intf = interference_columns(q);
      if (static_cast<long>(desired_syms.size() + intf.size()) != slots_) {
        throw std::logic_error("column count disagrees with the extension length");
      }
      Eigen::MatrixXcd A(slots_, slots_);
      long col = 0;
      for (long si : desired_syms) A.col(col++) = coef_[si].row(q).transpose();
      for (auto& c : intf) A.col(col++) = c;

      // Rank is scale-invariant; normalize columns so monomials of very
      // different degree do not skew the singular-value ratio.
      Eigen::MatrixXcd scaled = A;
      for (long j = 0; j < scaled.cols(); ++j) {
        double norm = scaled.col(j).norm();
        if (norm > 0) scaled.col(j) /= norm;
      }
      Eigen::VectorXd sv;
      if (slots_ > 128) {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(scaled);
        sv = svd.singularValues();
      } else {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(scaled);
        sv = svd.singularValues();
      }
      double ratio = sv(sv.size() - 1) / sv(0);
      check.min_rank_ratio = std::min(check.min_rank_ratio, ratio);

      // Honest receive path: every symbol contributes through its actual
      // received coefficient, then the receiver solves its own model.
      Eigen::VectorXcd y = Eigen::VectorXcd::Zero(slots_);
      for (size_t si = 0; si < syms_.size(); ++si) {
        y += coef_[si].row(q).transpose() * tx_symbols(static_cast<long>(si));
      }
      Eigen::VectorXcd z = A.colPivHouseholderQr().solve(y);
      for (size_t d = 0; d < desired_syms.size(); ++d) {
        double err = std::abs(z(static_cast<long>(d)) - tx_symbols(desired_syms[d]));
        check.max_decode_rel_error = std::max(check.max_decode_rel_error, err);
      }
    }
    check.rank_ok = check.min_rank_ratio > kRankTol;
    check.decode_ok = check.max_decode_rel_error < kDecodeTol;

    check.finite_dof = finite_n_dof(cfg_, r_, t_, n_, kind_);
    check.limit_dof = limit_dof(cfg_, r_, t_, kind_);
    check.dof_matches = (check.finite_dof == frac(mpz_class(desired_), mpz_class(slots_)));
    return out;
  }

  const NetworkConfig& cfg_;
  int r_, t_, n_;
  SchemeKind kind_;
  std::uint64_t seed_;

  std::vector<std::vector<int>> rx_groups_, tx_groups_, tc_blocks_;
  std::map<std::vector<int>, int> tx_group_index_, tc_index_;
  int k_exp_ = 0;
  int rho_ = 1;
  long monomials_per_symbol_ = 1;
  long slots_ = 0, desired_ = 0;

  ChannelRealization channel_;
  Eigen::MatrixXcd alphas_;
  std::vector<MonomialFamily> families_;
  // NeutralizeAlign: (rx group, tx group, residual receiver) -> factor slot
  std::map<std::tuple<int, int, int>, long> base_factor_index_;
  // SplitAlign: (rx group, neutralize choice, tc block) -> family
  std::map<std::tuple<int, int, int>, int> split_family_index_;
  // SplitAlign: (rx group, neutralize choice, tc block, extra tx, residual rx) -> factor slot
  std::map<std::tuple<int, int, int, int, int>, long> split_factor_index_;
  std::vector<Sym> syms_;
  std::vector<Eigen::MatrixXcd> coef_;  // per symbol: n_rx x slots received coefficients
  std::vector<Eigen::MatrixXcd> precoders_;
};

}  // namespace

ChannelRealization sample_channel(const NetworkConfig& cfg, int slots, std::uint64_t seed) {
  if (slots < 1) throw std::invalid_argument("channel needs at least one slot");
  ChannelRealization ch;
  ch.slots = slots;
  ch.n_rx = cfg.n_rx;
  ch.n_tx = cfg.n_tx;
  ComplexGaussian gen(seed);
  ch.coeffs.resize(slots);
  for (auto& h : ch.coeffs) {
    h.resize(cfg.n_rx, cfg.n_tx);
    for (int q = 0; q < cfg.n_rx; ++q) {
      for (int p = 0; p < cfg.n_tx; ++p) {
        Complex v = gen();
        while (v == Complex(0.0, 0.0)) v = gen();  // measure-zero resample
        h(q, p) = v;
      }
    }
  }
  return ch;
}

Eigen::VectorXcd cofactor_precoder(const Eigen::MatrixXcd& h_slot,
                                   const std::vector<int>& neutralize_rx,
                                   const std::vector<int>& tx_set) {
  const int k = static_cast<int>(neutralize_rx.size());
  if (static_cast<int>(tx_set.size()) != k + 1) {
    throw std::invalid_argument("cofactor_precoder needs |tx_set| == |neutralize_rx| + 1");
  }
  Eigen::VectorXcd c(k + 1);
  for (int p = 0; p <= k; ++p) {
    Eigen::MatrixXcd minor(k, k);
    for (int i = 0; i < k; ++i) {
      int col = 0;
      for (int j = 0; j <= k; ++j) {
        if (j == p) continue;
        minor(i, col++) = h_slot(neutralize_rx[i], tx_set[j]);
      }
    }
    Complex det = (k == 0) ? Complex(1.0, 0.0) : minor.determinant();
    c(p) = ((k + p) % 2 == 0) ? det : -det;
  }
  if (c.cwiseAbs().maxCoeff() == 0.0) {
    throw std::runtime_error("singular neutralization sub-determinant; resample the channel");
  }
  return c;
}

Complex bordered_received(const Eigen::MatrixXcd& h_slot, const std::vector<int>& neutralize_rx,
                          const std::vector<int>& tx_set, int rx) {
  Eigen::VectorXcd c = cofactor_precoder(h_slot, neutralize_rx, tx_set);
  Complex sum(0.0, 0.0);
  for (size_t p = 0; p < tx_set.size(); ++p) sum += h_slot(rx, tx_set[p]) * c(p);
  return sum;
}

SchemeKind natural_scheme(const NetworkConfig& cfg, int r, int t) {
  if (r + t >= cfg.n_rx) return SchemeKind::Neutralize;
  if (r + t == cfg.n_rx - 1) return SchemeKind::NeutralizeAlign;
  return (t == cfg.n_tx) ? SchemeKind::SplitNeutralize : SchemeKind::SplitAlign;
}

Rat finite_n_dof(const NetworkConfig& cfg, int r, int t, int n_levels, SchemeKind kind) {
  const int nr = cfg.n_rx, nt = cfg.n_tx;
  switch (kind) {
    case SchemeKind::Neutralize:
      return Rat(1);
    case SchemeKind::NeutralizeAlign: {
      unsigned long k = mpz_class(binomial(nr - 1, r + 1) * binomial(nt, t)).get_ui();
      mpz_class desired = binomial(nr - 1, r) * binomial(nt, t) * t * ipow(n_levels, k);
      return frac(desired, desired + ipow(n_levels + 1, k));
    }
    case SchemeKind::SplitAlign: {
      unsigned long k = static_cast<unsigned long>((nr - r - t) * (nt - t + 1));
      mpz_class desired = binomial(nr - 1, r) * binomial(nt, t) * binomial(nr - r - 1, t - 1) * t *
                          ipow(n_levels, k);
      mpz_class interference = binomial(nr - 1, r + 1) * binomial(nr - r - 2, t - 1) *
                               binomial(nt, t - 1) * ipow(n_levels + 1, k);
      return frac(desired, desired + interference);
    }
    case SchemeKind::SplitNeutralize: {
      mpz_class desired = binomial(nr - 1, r) * binomial(nr - r - 1, nt - 1);
      mpz_class interference = binomial(nr - 1, r + 1) * binomial(nr - r - 2, nt - 1);
      return frac(desired, desired + interference);
    }
  }
  throw std::logic_error("unreachable");
}

Rat limit_dof(const NetworkConfig& cfg, int r, int t, SchemeKind kind) {
  const int nr = cfg.n_rx, nt = cfg.n_tx;
  switch (kind) {
    case SchemeKind::Neutralize:
      return Rat(1);
    case SchemeKind::NeutralizeAlign: {
      mpz_class base = binomial(nr - 1, r) * binomial(nt, t) * t;
      return frac(base, base + 1);
    }
    case SchemeKind::SplitAlign:
      return split_align_term(cfg, r, t);
    case SchemeKind::SplitNeutralize:
      return split_align_term(cfg, r, nt);
  }
  throw std::logic_error("unreachable");
}

SchemeBuild build_scheme(const NetworkConfig& cfg, int r, int t, int n_levels, SchemeKind kind,
                         std::uint64_t seed) {
  SchemeBuilder builder(cfg, r, t, n_levels, kind, seed);
  return builder.run();
}

}  // namespace ndtopt
