/**
 * @file linprog.hpp
 * @brief Dense two-phase primal simplex with Bland's anti-cycling rule.
 *
 * Sized for the small LPs of hull membership, hull signed distances, the
 * epigraph reformulation and the dual reformulation (tens of variables).
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "robpareto/errors.hpp"
#include "robpareto/matrix.hpp"

namespace robpareto {

enum class LpStatus { optimal, infeasible, unbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "?";
}

/// minimize c.v  s.t.  a_i.v <= b_i,  e_j.v = d_j,  v >= lower.
///
/// `lower` defaults to all zeros when empty; entries may be -infinity for free
/// variables.
struct LpProblem {
  Vector objective;
  std::vector<Vector> le_rows;
  Vector le_rhs;
  std::vector<Vector> eq_rows;
  Vector eq_rhs;
  Vector lower;

  LpProblem() = default;
  explicit LpProblem(std::size_t num_vars) : objective(num_vars, 0.0) {}

  [[nodiscard]] std::size_t num_vars() const { return objective.size(); }

  void add_le(Vector row, double rhs) {
    le_rows.push_back(std::move(row));
    le_rhs.push_back(rhs);
  }
  void add_ge(Vector row, double rhs) {
    for (double& v : row) v = -v;
    add_le(std::move(row), -rhs);
  }
  void add_eq(Vector row, double rhs) {
    eq_rows.push_back(std::move(row));
    eq_rhs.push_back(rhs);
  }

  void set_free(std::size_t var) { set_lower(var, -std::numeric_limits<double>::infinity()); }
  void set_lower(std::size_t var, double bound) {
    if (lower.empty()) lower.assign(num_vars(), 0.0);
    lower.at(var) = bound;
  }

  [[nodiscard]] double lower_bound(std::size_t var) const { return lower.empty() ? 0.0 : lower[var]; }

  /// Throws DomainError on dimension mismatch or non-finite data.
  void validate() const {
    const std::size_t nv = num_vars();
    if (nv == 0) throw DomainError("LP needs at least one variable");
    auto finite = [](double v) { return std::isfinite(v); };
    for (double v : objective) {
      if (!finite(v)) throw DomainError("LP objective must be finite");
    }
    auto check_rows = [&](const std::vector<Vector>& rows, const Vector& rhs, const char* what) {
      if (rows.size() != rhs.size()) throw DomainError(std::string("LP ") + what + " rows and rhs disagree");
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != nv) throw DomainError(std::string("LP ") + what + " row has wrong length");
        for (double v : rows[i]) {
          if (!finite(v)) throw DomainError("LP coefficients must be finite");
        }
        if (!finite(rhs[i])) throw DomainError("LP right-hand sides must be finite");
      }
    };
    check_rows(le_rows, le_rhs, "inequality");
    check_rows(eq_rows, eq_rhs, "equality");
    if (!lower.empty()) {
      if (lower.size() != nv) throw DomainError("LP lower bounds have wrong length");
      for (double l : lower) {
        if (std::isnan(l) || l == std::numeric_limits<double>::infinity()) {
          throw DomainError("LP lower bounds must be finite or -infinity");
        }
      }
    }
  }
};

struct LpOptions {
  double feas_tol = 1e-9;
  double opt_tol = 1e-9;
  double pivot_tol = 1e-11;
  std::size_t max_iterations = 100000;
};

/// Solution of an LpProblem. Duals follow the convention
/// c = A_le^T y_le + A_eq^T y_eq + mu with y_le <= 0 and mu >= 0 on variables
/// with finite lower bounds.
struct LpResult {
  LpStatus status = LpStatus::infeasible;
  double value = std::numeric_limits<double>::quiet_NaN();
  Vector solution;
  Vector le_duals;
  Vector eq_duals;
  std::size_t iterations = 0;

  [[nodiscard]] bool optimal() const { return status == LpStatus::optimal; }
};

namespace detail {

class SimplexTableau {
 public:
  SimplexTableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), t_(rows * (cols + 1), 0.0) {}

  double& at(std::size_t r, std::size_t c) { return t_[r * (cols_ + 1) + c]; }
  [[nodiscard]] double at(std::size_t r, std::size_t c) const { return t_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  [[nodiscard]] double rhs(std::size_t r) const { return at(r, cols_); }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= p;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
      if (rhs(r) < 0.0 && rhs(r) > -1e-12) rhs(r) = 0.0;
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> t_;
};

enum class PhaseOutcome { optimal, unbounded };

/// Primal simplex on `tab` with Bland's rule: the entering column is the
/// lowest-index admissible column with negative reduced cost, the leaving row
/// the minimum ratio with ties broken by the lowest basic variable index.
inline PhaseOutcome run_phase(SimplexTableau& tab, std::vector<std::size_t>& basis, const Vector& cost,
                              std::size_t admissible_cols, const LpOptions& opt, std::size_t& iterations) {
  const std::size_t m = tab.rows();
  const std::size_t n = tab.cols();
  Vector reduced(n);
  while (true) {
    for (std::size_t j = 0; j < n; ++j) {
      double r = cost[j];
      for (std::size_t i = 0; i < m; ++i) r -= cost[basis[i]] * tab.at(i, j);
      reduced[j] = r;
    }
    std::size_t entering = n;
    for (std::size_t j = 0; j < admissible_cols; ++j) {
      if (reduced[j] < -opt.opt_tol) {
        entering = j;
        break;
      }
    }
    if (entering == n) return PhaseOutcome::optimal;

    std::size_t leaving = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double a = tab.at(i, entering);
      if (a <= opt.pivot_tol) continue;
      const double ratio = std::max(tab.rhs(i), 0.0) / a;
      const double slack = 1e-12 * std::max(1.0, std::abs(best));
      if (leaving == m || ratio < best - slack) {
        best = ratio;
        leaving = i;
      } else if (ratio <= best + slack && basis[i] < basis[leaving]) {
        best = std::min(best, ratio);
        leaving = i;
      }
    }
    if (leaving == m) return PhaseOutcome::unbounded;
    if (++iterations > opt.max_iterations) {
      throw SolverStalled("simplex exceeded " + std::to_string(opt.max_iterations) + " iterations");
    }
    tab.pivot(leaving, entering);
    basis[leaving] = entering;
  }
}

}  // namespace detail

/// Solves `problem` exactly up to the tolerances in `opt`.
///
/// Throws DomainError for malformed problems and SolverStalled when the
/// iteration budget is exhausted.
inline LpResult lp_solve(const LpProblem& problem, const LpOptions& opt = {}) {
  problem.validate();
  const std::size_t nv = problem.num_vars();
  const std::size_t m_le = problem.le_rows.size();
  const std::size_t m_eq = problem.eq_rows.size();
  const std::size_t m = m_le + m_eq;

  // Column layout: structural (shifted or split) | slacks | artificials.
  std::vector<std::size_t> pos_col(nv), neg_col(nv, SIZE_MAX);
  std::size_t ns = 0;
  for (std::size_t j = 0; j < nv; ++j) {
    pos_col[j] = ns++;
    if (!std::isfinite(problem.lower_bound(j))) neg_col[j] = ns++;
  }
  const std::size_t slack0 = ns;
  const std::size_t art0 = ns + m_le;
  const std::size_t ncols = art0 + m;

  LpResult result;
  if (m == 0) {
    // Only bounds: optimal at the lower bounds unless some cost pushes down
    // along an unbounded direction.
    result.solution.resize(nv);
    for (std::size_t j = 0; j < nv; ++j) {
      const double c = problem.objective[j];
      if ((!std::isfinite(problem.lower_bound(j)) && std::abs(c) > opt.opt_tol) || c < -opt.opt_tol) {
        result.status = LpStatus::unbounded;
        result.solution.clear();
        return result;
      }
      result.solution[j] = std::isfinite(problem.lower_bound(j)) ? problem.lower_bound(j) : 0.0;
    }
    result.status = LpStatus::optimal;
    result.value = dot(problem.objective, result.solution);
    return result;
  }

  detail::SimplexTableau tab(m, ncols);
  std::vector<double> sign(m, 1.0);
  double rhs_scale = 1.0;
  auto fill_row = [&](std::size_t r, const Vector& row, double rhs, bool has_slack) {
    double shifted = rhs;
    for (std::size_t j = 0; j < nv; ++j) {
      const double a = row[j];
      if (a == 0.0) continue;
      tab.at(r, pos_col[j]) = a;
      if (neg_col[j] != SIZE_MAX) {
        tab.at(r, neg_col[j]) = -a;
      } else {
        shifted -= a * problem.lower_bound(j);
      }
    }
    if (has_slack) tab.at(r, slack0 + r) = 1.0;
    tab.rhs(r) = shifted;
    if (shifted < 0.0) {
      sign[r] = -1.0;
      for (std::size_t c = 0; c < art0; ++c) tab.at(r, c) = -tab.at(r, c);
      tab.rhs(r) = -shifted;
    }
    tab.at(r, art0 + r) = 1.0;
    rhs_scale = std::max(rhs_scale, std::abs(shifted));
  };
  for (std::size_t i = 0; i < m_le; ++i) fill_row(i, problem.le_rows[i], problem.le_rhs[i], true);
  for (std::size_t i = 0; i < m_eq; ++i) fill_row(m_le + i, problem.eq_rows[i], problem.eq_rhs[i], false);

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = art0 + i;

  // Phase 1: minimize the sum of artificials.
  Vector cost(ncols, 0.0);
  for (std::size_t i = 0; i < m; ++i) cost[art0 + i] = 1.0;
  detail::run_phase(tab, basis, cost, art0, opt, result.iterations);
  double infeasibility = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] >= art0) infeasibility += tab.rhs(i);
  }
  if (infeasibility > opt.feas_tol * rhs_scale) {
    result.status = LpStatus::infeasible;
    return result;
  }
  // Drive zero-level artificials out of the basis where possible; rows where
  // no structural or slack entry is nonzero are redundant and keep theirs.
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < art0) continue;
    std::size_t best = art0;
    double best_abs = 1e-9;
    for (std::size_t j = 0; j < art0; ++j) {
      if (std::abs(tab.at(i, j)) > best_abs) {
        best_abs = std::abs(tab.at(i, j));
        best = j;
      }
    }
    if (best < art0) {
      tab.pivot(i, best);
      basis[i] = best;
    }
  }

  // Phase 2 with the true costs; artificials may not re-enter.
  std::fill(cost.begin(), cost.end(), 0.0);
  for (std::size_t j = 0; j < nv; ++j) {
    cost[pos_col[j]] = problem.objective[j];
    if (neg_col[j] != SIZE_MAX) cost[neg_col[j]] = -problem.objective[j];
  }
  if (detail::run_phase(tab, basis, cost, art0, opt, result.iterations) == detail::PhaseOutcome::unbounded) {
    result.status = LpStatus::unbounded;
    return result;
  }

  Vector colval(ncols, 0.0);
  for (std::size_t i = 0; i < m; ++i) colval[basis[i]] = std::max(tab.rhs(i), 0.0);
  result.solution.resize(nv);
  for (std::size_t j = 0; j < nv; ++j) {
    if (neg_col[j] != SIZE_MAX) {
      result.solution[j] = colval[pos_col[j]] - colval[neg_col[j]];
    } else {
      result.solution[j] = problem.lower_bound(j) + colval[pos_col[j]];
    }
  }
  // y^T = c_B^T B^{-1}; the artificial columns carry B^{-1}.
  Vector y(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double acc = 0.0;
    for (std::size_t r = 0; r < m; ++r) acc += cost[basis[r]] * tab.at(r, art0 + i);
    y[i] = acc * sign[i];
  }
  result.le_duals.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(m_le));
  result.eq_duals.assign(y.begin() + static_cast<std::ptrdiff_t>(m_le), y.end());
  result.status = LpStatus::optimal;
  result.value = dot(problem.objective, result.solution);
  return result;
}

}  // namespace robpareto
