#include "saacert/matrix.hpp"

#include <cmath>

namespace saacert {

double dot(const Vector &a, const Vector &b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::size_t matrix_rank(DenseMatrix a, double rel_tol) {
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t rank = 0;
  double max_pivot = 0.0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t piv = row;
    for (std::size_t r = row + 1; r < m; ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
    double p = std::fabs(a(piv, col));
    if (p > max_pivot) max_pivot = p;
    if (p <= rel_tol * std::max(max_pivot, 1e-300)) continue;
    if (piv != row)
      for (std::size_t c = col; c < n; ++c) std::swap(a(piv, c), a(row, c));
    for (std::size_t r = row + 1; r < m; ++r) {
      double f = a(r, col) / a(row, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(row, c);
    }
    ++row;
    ++rank;
  }
  return rank;
}

} // namespace saacert
