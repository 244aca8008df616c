#include "ndtopt/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace ndtopt {

namespace {

// Internal bounded-variable tableau. Columns are the shifted structural
// variables (lower bound 0), slacks for <= rows, and phase-1 artificials.
// Nonbasic columns sit at 0 or, when flagged, at their upper bound.
class SimplexTableau {
 public:
  SimplexTableau(const LinearProgram& lp) : lp_(lp) {
    n_ = lp.num_vars();
    const int n_le = static_cast<int>(lp.le_rows.size());
    const int n_eq = static_cast<int>(lp.eq_rows.size());
    m_ = n_eq + n_le;
    n_cols_ = n_ + n_le;  // artificials appended below

    for (int j = 0; j < n_; ++j) {
      upper_.push_back(lp.var_bounds[j].second - lp.var_bounds[j].first);
      upper_finite_.push_back(true);
    }
    for (int i = 0; i < n_le; ++i) {
      upper_.push_back(Rat(0));
      upper_finite_.push_back(false);  // slacks unbounded above
    }

    rows_.assign(m_, std::vector<Rat>(n_cols_, Rat(0)));
    beta_.assign(m_, Rat(0));
    int row = 0;
    for (int i = 0; i < n_eq; ++i, ++row) {
      for (int j = 0; j < n_; ++j) rows_[row][j] = lp.eq_rows[i].first[j];
      beta_[row] = shifted_rhs(lp.eq_rows[i]);
    }
    for (int i = 0; i < n_le; ++i, ++row) {
      for (int j = 0; j < n_; ++j) rows_[row][j] = lp.le_rows[i].first[j];
      rows_[row][n_ + i] = 1;
      beta_[row] = shifted_rhs(lp.le_rows[i]);
    }

    at_upper_.assign(n_cols_, false);
    is_basic_.assign(n_cols_, false);
    allowed_.assign(n_cols_, true);
    basis_.assign(m_, -1);

    // Initial basis: slack where its row already has a nonnegative rhs,
    // otherwise a fresh artificial (rows normalized to rhs >= 0 first).
    for (int i = 0; i < m_; ++i) {
      const bool is_le = i >= n_eq;
      if (beta_[i] < 0) {
        for (auto& v : rows_[i]) v = -v;
        beta_[i] = -beta_[i];
      }
      if (is_le && rows_[i][n_ + (i - n_eq)] == 1) {
        basis_[i] = n_ + (i - n_eq);
      } else {
        const int art = n_cols_;
        for (auto& r : rows_) r.push_back(Rat(0));
        rows_[i][art] = 1;
        upper_.push_back(Rat(0));
        upper_finite_.push_back(false);
        at_upper_.push_back(false);
        is_basic_.push_back(false);
        allowed_.push_back(true);
        artificials_.push_back(art);
        basis_[i] = art;
        ++n_cols_;
      }
      is_basic_[basis_[i]] = true;
    }
  }

  LpSolution run() {
    // Phase 1: minimize the artificial mass.
    if (!artificials_.empty()) {
      std::vector<Rat> cost(n_cols_, Rat(0));
      for (int a : artificials_) cost[a] = 1;
      if (!iterate(cost)) throw std::logic_error("phase 1 cannot be unbounded");
      Rat art_mass(0);
      std::vector<Rat> xb = basic_values();
      for (int i = 0; i < m_; ++i) {
        if (std::find(artificials_.begin(), artificials_.end(), basis_[i]) != artificials_.end()) {
          art_mass += xb[i];
        }
      }
      if (art_mass != 0) return {LpStatus::infeasible, Rat(0), {}};
      drive_out_artificials();
      for (int a : artificials_) allowed_[a] = false;
    }

    // Phase 2: the real objective over structural columns.
    std::vector<Rat> cost(n_cols_, Rat(0));
    for (int j = 0; j < n_; ++j) cost[j] = lp_.objective[j];
    if (!iterate(cost)) return {LpStatus::unbounded, Rat(0), {}};

    LpSolution sol;
    sol.status = LpStatus::optimal;
    sol.point.assign(n_, Rat(0));
    std::vector<Rat> xb = basic_values();
    for (int j = 0; j < n_; ++j) {
      sol.point[j] = at_upper_[j] ? upper_[j] : Rat(0);
    }
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) sol.point[basis_[i]] = xb[i];
    }
    sol.value = 0;
    for (int j = 0; j < n_; ++j) {
      sol.point[j] += lp_.var_bounds[j].first;  // undo the lower-bound shift
      sol.value += lp_.objective[j] * sol.point[j];
    }
    verify(sol);
    return sol;
  }

 private:
  Rat shifted_rhs(const std::pair<std::vector<Rat>, Rat>& row) const {
    Rat b = row.second;
    for (int j = 0; j < n_; ++j) b -= row.first[j] * lp_.var_bounds[j].first;
    return b;
  }

  std::vector<Rat> basic_values() const {
    std::vector<Rat> xb = beta_;
    for (int j = 0; j < n_cols_; ++j) {
      if (!is_basic_[j] && at_upper_[j] && upper_[j] != 0) {
        for (int i = 0; i < m_; ++i) {
          if (rows_[i][j] != 0) xb[i] -= rows_[i][j] * upper_[j];
        }
      }
    }
    return xb;
  }

  // Bland's rule over the bounded tableau: entering column is the lowest
  // index with an improving reduced cost, the blocking limit with the
  // lowest variable index leaves (the entering column itself for a bound
  // flip). Returns false when no limit blocks (unbounded objective).
  bool iterate(const std::vector<Rat>& cost) {
    while (true) {
      std::vector<Rat> xb = basic_values();
      std::vector<Rat> dual(m_);
      for (int i = 0; i < m_; ++i) dual[i] = cost[basis_[i]];

      int enter = -1;
      int dir = +1;
      for (int j = 0; j < n_cols_; ++j) {
        if (is_basic_[j] || !allowed_[j]) continue;
        Rat red = cost[j];
        for (int i = 0; i < m_; ++i) {
          if (dual[i] != 0 && rows_[i][j] != 0) red -= dual[i] * rows_[i][j];
        }
        if (!at_upper_[j] && red < 0) {
          enter = j;
          dir = +1;
          break;
        }
        if (at_upper_[j] && red > 0) {
          enter = j;
          dir = -1;
          break;
        }
      }
      if (enter < 0) return true;  // optimal

      // Ratio test: smallest step at which some variable hits a bound.
      bool blocked = false;
      Rat theta(0);
      int leave_row = -1;   // -1 with blocked => bound flip of the entering column
      int leave_var = -1;
      auto consider = [&](const Rat& limit, int row, int var) {
        if (!blocked || limit < theta || (limit == theta && var < leave_var)) {
          blocked = true;
          theta = limit;
          leave_row = row;
          leave_var = var;
        }
      };
      if (upper_finite_[enter]) consider(upper_[enter], -1, enter);
      for (int i = 0; i < m_; ++i) {
        const Rat& w = rows_[i][enter];
        if (w == 0) continue;
        Rat dw = dir * w;
        if (dw > 0) {
          consider(xb[i] / dw, i, basis_[i]);
        } else if (upper_finite_[basis_[i]]) {
          consider((upper_[basis_[i]] - xb[i]) / -dw, i, basis_[i]);
        }
      }
      if (!blocked) return false;  // unbounded ray

      if (leave_row < 0) {
        at_upper_[enter] = !at_upper_[enter];
        continue;
      }

      const int leave = basis_[leave_row];
      // Leaving variable lands on the bound it hit.
      at_upper_[leave] = (Rat(dir) * rows_[leave_row][enter] < 0);
      is_basic_[leave] = false;
      pivot(leave_row, enter);
      basis_[leave_row] = enter;
      is_basic_[enter] = true;
      at_upper_[enter] = false;
    }
  }

  void pivot(int prow, int pcol) {
    Rat inv = 1 / rows_[prow][pcol];
    for (auto& v : rows_[prow]) v *= inv;
    beta_[prow] *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == prow) continue;
      Rat f = rows_[i][pcol];
      if (f == 0) continue;
      for (int j = 0; j < n_cols_; ++j) {
        if (rows_[prow][j] != 0) rows_[i][j] -= f * rows_[prow][j];
      }
      beta_[i] -= f * beta_[prow];
    }
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (std::find(artificials_.begin(), artificials_.end(), basis_[i]) == artificials_.end()) {
        continue;
      }
      int col = -1;
      for (int j = 0; j < n_ + static_cast<int>(lp_.le_rows.size()); ++j) {
        if (!is_basic_[j] && rows_[i][j] != 0) {
          col = j;
          break;
        }
      }
      if (col < 0) continue;  // redundant row, artificial stays basic at 0
      is_basic_[basis_[i]] = false;
      pivot(i, col);
      is_basic_[col] = true;
      at_upper_[col] = false;
      basis_[i] = col;
    }
  }

  void verify(const LpSolution& sol) const {
    for (int j = 0; j < n_; ++j) {
      if (sol.point[j] < lp_.var_bounds[j].first || sol.point[j] > lp_.var_bounds[j].second) {
        throw std::logic_error("simplex returned an out-of-bounds point");
      }
    }
    auto dot = [&](const std::vector<Rat>& a) {
      Rat s(0);
      for (int j = 0; j < n_; ++j) s += a[j] * sol.point[j];
      return s;
    };
    for (const auto& row : lp_.eq_rows) {
      if (dot(row.first) != row.second) throw std::logic_error("simplex equality row violated");
    }
    for (const auto& row : lp_.le_rows) {
      if (dot(row.first) > row.second) throw std::logic_error("simplex inequality row violated");
    }
  }

  const LinearProgram& lp_;
  int n_ = 0;       // structural variables
  int m_ = 0;       // rows
  int n_cols_ = 0;  // structural + slack + artificial columns
  std::vector<std::vector<Rat>> rows_;
  std::vector<Rat> beta_;  // B^{-1} b under the same pivots as rows_
  std::vector<Rat> upper_;
  std::vector<char> upper_finite_;
  std::vector<char> at_upper_;
  std::vector<char> is_basic_;
  std::vector<char> allowed_;
  std::vector<int> basis_;
  std::vector<int> artificials_;
};

// Exact Gaussian elimination; returns true and fills x when M x = v has a
// unique solution.
bool solve_unique(std::vector<std::vector<Rat>> M, std::vector<Rat> v, int n_unknowns,
                  std::vector<Rat>& x) {
  const int rows = static_cast<int>(M.size());
  int rank = 0;
  std::vector<int> pivot_row_of_col(n_unknowns, -1);
  for (int col = 0; col < n_unknowns && rank < rows; ++col) {
    int prow = -1;
    for (int i = rank; i < rows; ++i) {
      if (M[i][col] != 0) {
        prow = i;
        break;
      }
    }
    if (prow < 0) continue;
    std::swap(M[prow], M[rank]);
    std::swap(v[prow], v[rank]);
    Rat inv = 1 / M[rank][col];
    for (int j = col; j < n_unknowns; ++j) M[rank][j] *= inv;
    v[rank] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == rank || M[i][col] == 0) continue;
      Rat f = M[i][col];
      for (int j = col; j < n_unknowns; ++j) M[i][j] -= f * M[rank][j];
      v[i] -= f * v[rank];
    }
    pivot_row_of_col[col] = rank;
    ++rank;
  }
  if (rank < n_unknowns) return false;  // underdetermined
  for (int i = rank; i < rows; ++i) {
    if (v[i] != 0) return false;  // inconsistent
  }
  x.assign(n_unknowns, Rat(0));
  for (int col = 0; col < n_unknowns; ++col) x[col] = v[pivot_row_of_col[col]];
  return true;
}

class VertexEnumerator {
 public:
  VertexEnumerator(const LinearProgram& lp) : lp_(lp), n_(lp.num_vars()) {
    const int n_eq = static_cast<int>(lp.eq_rows.size());
    const int n_le = static_cast<int>(lp.le_rows.size());
    max_free_ = n_eq + n_le;
    state_.assign(n_, kAtLo);
    for (const auto& row : lp.eq_rows) rows_.push_back(&row);
    n_eq_ = n_eq;
    for (const auto& row : lp.le_rows) rows_.push_back(&row);
    row_min_.assign(rows_.size(), Rat(0));
    row_max_.assign(rows_.size(), Rat(0));
    for (size_t i = 0; i < rows_.size(); ++i) {
      for (int j = 0; j < n_; ++j) add_interval(i, j);
    }
  }

  LpSolution run() {
    descend(0, 0);
    if (!found_) return {LpStatus::infeasible, Rat(0), {}};
    return {LpStatus::optimal, best_value_, best_point_};
  }

 private:
  enum VarState { kAtLo, kAtHi, kFree };

  void add_interval(size_t row, int j) {
    const Rat& a = rows_[row]->first[j];
    Rat lo = a * lp_.var_bounds[j].first;
    Rat hi = a * lp_.var_bounds[j].second;
    if (lo > hi) std::swap(lo, hi);
    row_min_[row] += lo;
    row_max_[row] += hi;
  }

  void remove_interval(size_t row, int j) {
    const Rat& a = rows_[row]->first[j];
    Rat lo = a * lp_.var_bounds[j].first;
    Rat hi = a * lp_.var_bounds[j].second;
    if (lo > hi) std::swap(lo, hi);
    row_min_[row] -= lo;
    row_max_[row] -= hi;
  }

  bool rows_possible() const {
    for (size_t i = 0; i < rows_.size(); ++i) {
      const Rat& rhs = rows_[i]->second;
      if (i < static_cast<size_t>(n_eq_)) {
        if (rhs < row_min_[i] || rhs > row_max_[i]) return false;
      } else if (row_min_[i] > rhs) {
        return false;
      }
    }
    return true;
  }

  void descend(int j, int free_count) {
    if (!rows_possible()) return;
    if (j == n_) {
      evaluate_leaf();
      return;
    }
    for (VarState st : {kAtLo, kAtHi, kFree}) {
      if (st == kFree && free_count == max_free_) continue;
      if (st == kAtHi && lp_.var_bounds[j].first == lp_.var_bounds[j].second) continue;
      state_[j] = st;
      if (st != kFree) {
        const Rat v = (st == kAtLo) ? lp_.var_bounds[j].first : lp_.var_bounds[j].second;
        for (size_t i = 0; i < rows_.size(); ++i) {
          remove_interval(i, j);
          row_min_[i] += rows_[i]->first[j] * v;
          row_max_[i] += rows_[i]->first[j] * v;
        }
        descend(j + 1, free_count);
        for (size_t i = 0; i < rows_.size(); ++i) {
          const Rat delta = rows_[i]->first[j] * v;
          row_min_[i] -= delta;
          row_max_[i] -= delta;
          add_interval(i, j);
        }
      } else {
        descend(j + 1, free_count + 1);
      }
    }
    state_[j] = kAtLo;
  }

  void evaluate_leaf() {
    std::vector<int> free_vars;
    std::vector<Rat> x(n_);
    for (int j = 0; j < n_; ++j) {
      if (state_[j] == kFree) {
        free_vars.push_back(j);
      } else {
        x[j] = (state_[j] == kAtLo) ? lp_.var_bounds[j].first : lp_.var_bounds[j].second;
      }
    }
    const int k = static_cast<int>(free_vars.size());
    const int n_le = static_cast<int>(lp_.le_rows.size());

    // Try every subset of <= rows as the tight set alongside all equality
    // rows; a basic point needs the induced system to pin the free block.
    for (unsigned mask = 0; mask < (1u << n_le); ++mask) {
      int tight = n_eq_ + __builtin_popcount(mask);
      if (tight < k) continue;
      std::vector<std::vector<Rat>> M;
      std::vector<Rat> v;
      auto add_row = [&](const std::pair<std::vector<Rat>, Rat>& row) {
        std::vector<Rat> coef(k);
        Rat rhs = row.second;
        for (int j = 0; j < n_; ++j) {
          if (state_[j] == kFree) continue;
          rhs -= row.first[j] * x[j];
        }
        for (int c = 0; c < k; ++c) coef[c] = row.first[free_vars[c]];
        M.push_back(std::move(coef));
        v.push_back(std::move(rhs));
      };
      for (const auto& row : lp_.eq_rows) add_row(row);
      for (int i = 0; i < n_le; ++i) {
        if (mask & (1u << i)) add_row(lp_.le_rows[i]);
      }
      std::vector<Rat> sol;
      if (k > 0 && !solve_unique(M, v, k, sol)) continue;
      if (k == 0) {
        bool consistent = true;
        for (size_t i = 0; i < M.size(); ++i) {
          if (v[i] != 0) consistent = false;
        }
        if (!consistent) continue;
      }
      for (int c = 0; c < k; ++c) x[free_vars[c]] = sol[c];
      if (!feasible(x)) continue;
      Rat value(0);
      for (int j = 0; j < n_; ++j) value += lp_.objective[j] * x[j];
      if (!found_ || value < best_value_) {
        found_ = true;
        best_value_ = value;
        best_point_ = x;
      }
    }
  }

  bool feasible(const std::vector<Rat>& x) const {
    for (int j = 0; j < n_; ++j) {
      if (x[j] < lp_.var_bounds[j].first || x[j] > lp_.var_bounds[j].second) return false;
    }
    auto dot = [&](const std::vector<Rat>& a) {
      Rat s(0);
      for (int j = 0; j < n_; ++j) s += a[j] * x[j];
      return s;
    };
    for (const auto& row : lp_.eq_rows) {
      if (dot(row.first) != row.second) return false;
    }
    for (const auto& row : lp_.le_rows) {
      if (dot(row.first) > row.second) return false;
    }
    return true;
  }

  const LinearProgram& lp_;
  int n_;
  int n_eq_ = 0;
  int max_free_;
  std::vector<const std::pair<std::vector<Rat>, Rat>*> rows_;
  std::vector<VarState> state_;
  std::vector<Rat> row_min_, row_max_;
  bool found_ = false;
  Rat best_value_;
  std::vector<Rat> best_point_;
};

}  // namespace

void LinearProgram::check_well_formed() const {
  const size_t n = objective.size();
  if (var_bounds.size() != n) throw std::invalid_argument("var_bounds size mismatch");
  for (const auto& [lo, hi] : var_bounds) {
    if (lo > hi) throw std::invalid_argument("variable bound with lo > hi");
  }
  for (const auto& row : eq_rows) {
    if (row.first.size() != n) throw std::invalid_argument("equality row length mismatch");
  }
  for (const auto& row : le_rows) {
    if (row.first.size() != n) throw std::invalid_argument("inequality row length mismatch");
  }
}

namespace {

// Callers may hand us unreduced mpq values; GMP arithmetic requires
// canonical operands.
LinearProgram canonical_copy(const LinearProgram& lp) {
  LinearProgram out = lp;
  for (auto& c : out.objective) c.canonicalize();
  for (auto& [row, rhs] : out.eq_rows) {
    for (auto& c : row) c.canonicalize();
    rhs.canonicalize();
  }
  for (auto& [row, rhs] : out.le_rows) {
    for (auto& c : row) c.canonicalize();
    rhs.canonicalize();
  }
  for (auto& [lo, hi] : out.var_bounds) {
    lo.canonicalize();
    hi.canonicalize();
  }
  return out;
}

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  lp.check_well_formed();
  LinearProgram clean = canonical_copy(lp);
  SimplexTableau tableau(clean);
  return tableau.run();
}

LpSolution vertex_oracle(const LinearProgram& lp) {
  lp.check_well_formed();
  if (lp.num_vars() > 16) {
    throw std::invalid_argument("vertex_oracle is limited to 16 variables");
  }
  LinearProgram clean = canonical_copy(lp);
  VertexEnumerator enumerator(clean);
  return enumerator.run();
}

}  // namespace ndtopt
