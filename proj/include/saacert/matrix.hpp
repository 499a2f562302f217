#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace saacert {

using Vector = std::vector<double>;

// Dense row-major matrix. Sizes here are desk scale; no sparse storage.
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  DenseMatrix(std::size_t rows, std::size_t cols, Vector entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw std::invalid_argument("DenseMatrix: entries length != rows*cols");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const Vector &data() const { return data_; }
  Vector &data() { return data_; }

  Vector col(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  // y = A x
  Vector apply(const Vector &x) const {
    if (x.size() != cols_) throw std::invalid_argument("DenseMatrix::apply: size mismatch");
    Vector y(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) * x[c];
      y[r] = s;
    }
    return y;
  }

  // y = A^T x
  Vector apply_transpose(const Vector &x) const {
    if (x.size() != rows_) throw std::invalid_argument("DenseMatrix::apply_transpose: size mismatch");
    Vector y(cols_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) y[c] += (*this)(r, c) * x[r];
    return y;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vector data_;
};

// Numerical rank via Gaussian elimination with partial pivoting.
// Pivots below `rel_tol` times the largest pivot count as zero.
std::size_t matrix_rank(DenseMatrix a, double rel_tol = 1e-10);

double dot(const Vector &a, const Vector &b);

} // namespace saacert
