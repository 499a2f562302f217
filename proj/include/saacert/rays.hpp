#pragma once

#include "saacert/matrix.hpp"

#include <cstdint>
#include <stdexcept>

namespace saacert {

// Non-equivalent extreme rays of a pointed polyhedral cone {a : a^T W >= 0}.
// Each ray is scaled (positively) so its largest-magnitude entry is +1 or -1;
// equality after this normalization is the equivalence under positive scaling.
struct RaySet {
  std::size_t dim = 0;
  std::vector<Vector> rays;
};

struct NonPointedConeError : std::runtime_error {
  Vector lineality; // nonzero direction with a^T W = 0
  explicit NonPointedConeError(Vector dir)
      : std::runtime_error("cone is not pointed"), lineality(std::move(dir)) {}
};

struct RayCapExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// rank(W) == m1, i.e. the lineality space {a : a^T W = 0} is trivial.
bool pointedness_check(const DenseMatrix &w, double rel_tol = 1e-10);

// Double description over the n1 halfspaces a^T w_j >= 0 (w_j = column j).
// Requires a pointed cone; throws NonPointedConeError with a lineality
// certificate otherwise.
RaySet enumerate_extreme_rays(const DenseMatrix &w, std::size_t ray_cap = 100000);

// x in dom f_xi: a^T (h - T x) >= -1e-9 for every extreme ray a.
// Empty ray set means the trivial cone; the condition is vacuously true.
bool farkas_in_domain(const RaySet &rays, const DenseMatrix &t, const Vector &h,
                      const Vector &x);

// v expressible as a nonnegative combination of the rays (LP feasibility).
bool cone_membership(const RaySet &rays, const Vector &v);

void normalize_ray(Vector &r);

} // namespace saacert
