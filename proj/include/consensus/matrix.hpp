#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace consensus {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles. Small and square in practice (n up to
/// a few hundred), so no expression templates or BLAS.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

  bool operator==(const Matrix&) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// y = M x. Throws DimensionMismatch when x.size() != M.cols().
Vector multiply(const Matrix& m, std::span<const double> x);

Matrix multiply(const Matrix& a, const Matrix& b);

}  // namespace consensus
