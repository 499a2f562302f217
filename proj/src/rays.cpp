#include "saacert/rays.hpp"

#include "saacert/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace saacert {

namespace {

constexpr double kTightTol = 1e-9;

// Nonzero x with A x = 0, or empty when the null space is trivial.
Vector nullspace_vector(DenseMatrix a, double rel_tol = 1e-10) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  double max_pivot = 0.0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t piv = row;
    for (std::size_t r = row + 1; r < m; ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
    double p = std::fabs(a(piv, col));
    if (p > max_pivot) max_pivot = p;
    if (p <= rel_tol * std::max(max_pivot, 1e-300)) continue;
    if (piv != row)
      for (std::size_t c = 0; c < n; ++c) std::swap(a(piv, c), a(row, c));
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row) continue;
      double f = a(r, col) / a(row, col);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) a(r, c) -= f * a(row, c);
    }
    pivot_col.push_back(col);
    ++row;
  }
  if (pivot_col.size() == n) return {};
  // Pick the first free column and back out the pivot values.
  std::size_t free_col = 0;
  while (free_col < n &&
         std::find(pivot_col.begin(), pivot_col.end(), free_col) != pivot_col.end())
    ++free_col;
  Vector x(n, 0.0);
  x[free_col] = 1.0;
  for (std::size_t r = 0; r < pivot_col.size(); ++r)
    x[pivot_col[r]] = -a(r, free_col) / a(r, pivot_col[r]);
  return x;
}

// Solve square system M x = b by Gaussian elimination with partial pivoting.
Vector solve_square(DenseMatrix m, Vector b) {
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(m(r, col)) > std::fabs(m(piv, col))) piv = r;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(piv, c), m(col, c));
      std::swap(b[piv], b[col]);
    }
    if (std::fabs(m(col, col)) < 1e-300)
      throw std::runtime_error("solve_square: singular matrix");
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = m(r, col) / m(col, col);
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
      b[r] -= f * b[col];
    }
  }
  Vector x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= m(i, c) * x[c];
    x[i] = s / m(i, i);
  }
  return x;
}

struct DdRay {
  Vector coords;
  std::vector<std::uint32_t> tight; // sorted processed-constraint indices
};

bool is_subset(const std::vector<std::uint32_t> &a, const std::vector<std::uint32_t> &b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<std::uint32_t> intersect_sorted(const std::vector<std::uint32_t> &a,
                                            const std::vector<std::uint32_t> &b) {
  std::vector<std::uint32_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::uint32_t> tight_set(const DenseMatrix &w, const Vector &r,
                                     const std::vector<std::uint32_t> &processed) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t j : processed) {
    double s = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < w.rows(); ++i) {
      s += r[i] * w(i, j);
      scale += std::fabs(w(i, j));
    }
    if (std::fabs(s) <= kTightTol * (1.0 + scale)) out.push_back(j);
  }
  return out;
}

} // namespace

void normalize_ray(Vector &r) {
  double m = 0.0;
  for (double v : r) m = std::max(m, std::fabs(v));
  if (m <= 0.0) throw std::invalid_argument("normalize_ray: zero vector");
  for (double &v : r) v /= m;
}

bool pointedness_check(const DenseMatrix &w, double rel_tol) {
  return matrix_rank(w, rel_tol) == w.rows();
}

RaySet enumerate_extreme_rays(const DenseMatrix &w, std::size_t ray_cap) {
  const std::size_t m = w.rows(), n = w.cols();
  if (!pointedness_check(w)) {
    // Lineality certificate: nonzero a with W^T a = 0.
    DenseMatrix wt(n, m);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < n; ++c) wt(c, r) = w(r, c);
    Vector cert = nullspace_vector(wt);
    throw NonPointedConeError(std::move(cert));
  }

  // Select m linearly independent columns for the initial simplicial cone.
  std::vector<std::uint32_t> base;
  {
    DenseMatrix sub(m, 0);
    for (std::uint32_t j = 0; j < n && base.size() < m; ++j) {
      DenseMatrix trial(m, base.size() + 1);
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t k = 0; k < base.size(); ++k) trial(r, k) = w(r, base[k]);
        trial(r, base.size()) = w(r, j);
      }
      if (matrix_rank(trial) == base.size() + 1) base.push_back(j);
    }
  }

  // Initial rays r_i with w_{base[k]}^T r_i = delta_{ki}: columns of the
  // inverse of W_B^T.
  DenseMatrix wbt(m, m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i) wbt(k, i) = w(i, base[k]);

  std::vector<DdRay> rays;
  std::vector<std::uint32_t> processed(base);
  std::sort(processed.begin(), processed.end());
  for (std::size_t i = 0; i < m; ++i) {
    Vector e(m, 0.0);
    e[i] = 1.0;
    DdRay r;
    r.coords = solve_square(wbt, e);
    normalize_ray(r.coords);
    r.tight = tight_set(w, r.coords, processed);
    rays.push_back(std::move(r));
  }

  for (std::uint32_t j = 0; j < n; ++j) {
    if (std::binary_search(processed.begin(), processed.end(), j)) continue;
    Vector wj = w.col(j);
    double scale = 0.0;
    for (double v : wj) scale += std::fabs(v);
    double tol = kTightTol * (1.0 + scale);

    std::vector<std::size_t> plus, minus, zero;
    std::vector<double> s(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
      s[i] = dot(rays[i].coords, wj);
      if (s[i] > tol)
        plus.push_back(i);
      else if (s[i] < -tol)
        minus.push_back(i);
      else
        zero.push_back(i);
    }

    std::vector<DdRay> next;
    for (std::size_t i : plus) next.push_back(rays[i]);
    for (std::size_t i : zero) next.push_back(rays[i]);

    std::vector<std::uint32_t> processed_next(processed);
    processed_next.insert(
        std::lower_bound(processed_next.begin(), processed_next.end(), j), j);

    for (std::size_t p : plus) {
      for (std::size_t q : minus) {
        // Combinatorial adjacency: no third extreme ray's tight set
        // contains the common tight set of p and q.
        auto common = intersect_sorted(rays[p].tight, rays[q].tight);
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k == p || k == q) continue;
          if (is_subset(common, rays[k].tight)) adjacent = false;
        }
        if (!adjacent) continue;
        DdRay nr;
        nr.coords.resize(m);
        for (std::size_t i = 0; i < m; ++i)
          nr.coords[i] = s[p] * rays[q].coords[i] - s[q] * rays[p].coords[i];
        normalize_ray(nr.coords);
        nr.tight = tight_set(w, nr.coords, processed_next);
        // Degenerate instances can produce numeric duplicates.
        bool dup = false;
        for (const DdRay &ex : next) {
          double diff = 0.0;
          for (std::size_t i = 0; i < m; ++i)
            diff = std::max(diff, std::fabs(ex.coords[i] - nr.coords[i]));
          if (diff < 1e-9) {
            dup = true;
            break;
          }
        }
        if (!dup) next.push_back(std::move(nr));
        if (next.size() > ray_cap) throw RayCapExceededError("extreme ray cap exceeded");
      }
    }

    // Tight sets of surviving rays gain constraint j when it is tight.
    for (DdRay &r : next) r.tight = tight_set(w, r.coords, processed_next);
    rays = std::move(next);
    processed = std::move(processed_next);
  }

  RaySet out;
  out.dim = m;
  for (DdRay &r : rays) out.rays.push_back(std::move(r.coords));
  return out;
}

bool farkas_in_domain(const RaySet &rays, const DenseMatrix &t, const Vector &h,
                      const Vector &x) {
  if (t.rows() != h.size() || t.cols() != x.size() ||
      (rays.dim != 0 && rays.dim != h.size()))
    throw std::invalid_argument("farkas_in_domain: dimension mismatch");
  Vector tx = t.apply(x);
  for (const Vector &a : rays.rays) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * (h[i] - tx[i]);
    if (s < -1e-9) return false;
  }
  return true;
}

bool cone_membership(const RaySet &rays, const Vector &v) {
  if (rays.dim != v.size())
    throw std::invalid_argument("cone_membership: dimension mismatch");
  if (rays.rays.empty()) {
    for (double x : v)
      if (std::fabs(x) > 1e-8) return false;
    return true;
  }
  DenseMatrix r(rays.dim, rays.rays.size());
  for (std::size_t k = 0; k < rays.rays.size(); ++k)
    for (std::size_t i = 0; i < rays.dim; ++i) r(i, k) = rays.rays[k][i];
  return lp_feasible_nonneg(r, v);
}

} // namespace saacert
