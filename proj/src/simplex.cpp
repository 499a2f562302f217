#include "saacert/simplex.hpp"

#include <cmath>
#include <limits>

namespace saacert {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-8;

// Tableau rows: m constraint rows plus one objective row (reduced costs,
// with -objective value in the rhs slot). Column layout: structural vars
// first, artificials last. Basis holds the variable index of each row.
struct Tableau {
  std::size_t m, n; // constraint rows, total columns (excl. rhs)
  std::vector<std::vector<double>> t; // (m+1) x (n+1)
  std::vector<std::size_t> basis;

  double &at(std::size_t r, std::size_t c) { return t[r][c]; }
  double &rhs(std::size_t r) { return t[r][n]; }
};

// Bland's rule: entering = lowest-index negative reduced cost; leaving =
// min ratio with lowest basis variable index on ties.
// Returns false when optimal, throws on unbounded via the flag.
enum class PivotResult { Optimal, Pivoted, Unbounded };

PivotResult pivot_step(Tableau &tab) {
  std::size_t enter = tab.n;
  for (std::size_t j = 0; j < tab.n; ++j) {
    if (tab.at(tab.m, j) < -kPivotTol) {
      enter = j;
      break;
    }
  }
  if (enter == tab.n) return PivotResult::Optimal;

  std::size_t leave = tab.m;
  double best_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < tab.m; ++r) {
    double a = tab.at(r, enter);
    if (a > kPivotTol) {
      double ratio = tab.rhs(r) / a;
      if (ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 &&
           (leave == tab.m || tab.basis[r] < tab.basis[leave]))) {
        best_ratio = ratio;
        leave = r;
      }
    }
  }
  if (leave == tab.m) return PivotResult::Unbounded;

  double p = tab.at(leave, enter);
  for (std::size_t c = 0; c <= tab.n; ++c) tab.at(leave, c) /= p;
  for (std::size_t r = 0; r <= tab.m; ++r) {
    if (r == leave) continue;
    double f = tab.at(r, enter);
    if (f == 0.0) continue;
    for (std::size_t c = 0; c <= tab.n; ++c) tab.at(r, c) -= f * tab.at(leave, c);
  }
  tab.basis[leave] = enter;
  return PivotResult::Pivoted;
}

PivotResult run_simplex(Tableau &tab, std::size_t cap) {
  for (std::size_t it = 0; it < cap; ++it) {
    PivotResult r = pivot_step(tab);
    if (r != PivotResult::Pivoted) return r;
  }
  throw LpError("simplex: iteration cap exceeded");
}

struct Phase1 {
  Tableau tab;
  std::size_t n_struct;
  double artificial_objective;
};

Phase1 phase1(const Vector &c, const DenseMatrix &a, const Vector &b) {
  const std::size_t m = a.rows(), n = a.cols();
  if (b.size() != m || c.size() != n)
    throw std::invalid_argument("lp_solve: dimension mismatch");

  Phase1 ph;
  ph.n_struct = n;
  Tableau &tab = ph.tab;
  tab.m = m;
  tab.n = n + m; // artificials appended
  tab.t.assign(m + 1, std::vector<double>(tab.n + 1, 0.0));
  tab.basis.resize(m);

  for (std::size_t r = 0; r < m; ++r) {
    double sgn = b[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tab.at(r, j) = sgn * a(r, j);
    tab.at(r, n + r) = 1.0;
    tab.rhs(r) = sgn * b[r];
    tab.basis[r] = n + r;
  }
  // Phase-1 objective: minimize sum of artificials. Reduced costs after
  // pricing out the artificial basis.
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t r = 0; r < m; ++r) s += tab.at(r, j);
    tab.at(m, j) = -s;
  }
  double rhs_sum = 0.0;
  for (std::size_t r = 0; r < m; ++r) rhs_sum += tab.rhs(r);
  tab.rhs(m) = -rhs_sum;

  std::size_t cap = 50 * (m + tab.n);
  PivotResult res = run_simplex(tab, cap == 0 ? 1 : cap);
  if (res == PivotResult::Unbounded)
    throw LpError("simplex phase 1: unbounded (internal error)");
  ph.artificial_objective = -tab.rhs(m);
  return ph;
}

} // namespace

bool lp_feasible_nonneg(const DenseMatrix &w, const Vector &rhs) {
  Vector c(w.cols(), 0.0);
  Phase1 ph = phase1(c, w, rhs);
  return ph.artificial_objective < kFeasTol;
}

LpOutcome lp_solve(const Vector &c, const DenseMatrix &a_eq, const Vector &b) {
  const std::size_t m = a_eq.rows(), n = a_eq.cols();
  Phase1 ph = phase1(c, a_eq, b);
  Tableau &tab = ph.tab;

  LpOutcome out;
  if (ph.artificial_objective >= kFeasTol) {
    out.status = LpStatus::Infeasible;
    return out;
  }

  // Drive any artificial still basic (at zero level) out of the basis;
  // drop redundant rows where no structural pivot exists.
  std::vector<bool> row_active(m, true);
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis[r] < n) continue;
    std::size_t piv = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::fabs(tab.at(r, j)) > kPivotTol) {
        piv = j;
        break;
      }
    }
    if (piv == n) {
      row_active[r] = false; // redundant constraint
      continue;
    }
    double p = tab.at(r, piv);
    for (std::size_t col = 0; col <= tab.n; ++col) tab.at(r, col) /= p;
    for (std::size_t rr = 0; rr <= m; ++rr) {
      if (rr == r) continue;
      double f = tab.at(rr, piv);
      if (f == 0.0) continue;
      for (std::size_t col = 0; col <= tab.n; ++col)
        tab.at(rr, col) -= f * tab.at(r, col);
    }
    tab.basis[r] = piv;
  }

  // Rebuild tableau without artificial columns and inactive rows.
  Tableau t2;
  t2.n = n;
  t2.m = 0;
  for (std::size_t r = 0; r < m; ++r)
    if (row_active[r]) ++t2.m;
  t2.t.assign(t2.m + 1, std::vector<double>(n + 1, 0.0));
  t2.basis.resize(t2.m);
  std::size_t rr = 0;
  for (std::size_t r = 0; r < m; ++r) {
    if (!row_active[r]) continue;
    for (std::size_t j = 0; j < n; ++j) t2.at(rr, j) = tab.at(r, j);
    t2.rhs(rr) = tab.rhs(r);
    t2.basis[rr] = tab.basis[r];
    ++rr;
  }
  // Phase-2 objective row: price out the basic columns of c.
  for (std::size_t j = 0; j < n; ++j) t2.at(t2.m, j) = c[j];
  double obj_rhs = 0.0;
  for (std::size_t r = 0; r < t2.m; ++r) {
    double cb = c[t2.basis[r]];
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) t2.at(t2.m, j) -= cb * t2.at(r, j);
    obj_rhs += cb * t2.rhs(r);
  }
  t2.rhs(t2.m) = -obj_rhs;

  std::size_t cap = 50 * (t2.m + n);
  PivotResult res = run_simplex(t2, cap == 0 ? 1 : cap);
  if (res == PivotResult::Unbounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  out.status = LpStatus::Optimal;
  out.x.assign(n, 0.0);
  for (std::size_t r = 0; r < t2.m; ++r) out.x[t2.basis[r]] = t2.rhs(r);
  out.objective = dot(c, out.x);
  return out;
}

} // namespace saacert
