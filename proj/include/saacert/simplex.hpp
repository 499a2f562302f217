#pragma once

#include "saacert/matrix.hpp"

#include <optional>
#include <string>

namespace saacert {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Vector x;         // present iff optimal
  double objective = 0.0; // present iff optimal
};

struct LpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// min c^T z  s.t.  A z = b, z >= 0.
// Two-phase simplex with Bland's anti-cycling rule. Throws LpError when the
// iteration cap 50*(rows+cols) is hit (numerical trouble, not a status).
LpOutcome lp_solve(const Vector &c, const DenseMatrix &a_eq, const Vector &b);

// Farkas primal side: is {y >= 0 : W y = rhs} nonempty? Phase-1 only.
bool lp_feasible_nonneg(const DenseMatrix &w, const Vector &rhs);

} // namespace saacert
