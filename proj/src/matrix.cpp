#include "consensus/matrix.hpp"

#include "consensus/errors.hpp"

namespace consensus {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch(cols_, r.size());
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector multiply(const Matrix& m, std::span<const double> x) {
  if (x.size() != m.cols()) throw DimensionMismatch(m.cols(), x.size());
  Vector y(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double acc = 0.0;
    auto r = m.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) acc += r[j] * x[j];
    y[i] = acc;
  }
  return y;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch(a.cols(), b.rows());
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

}  // namespace consensus
