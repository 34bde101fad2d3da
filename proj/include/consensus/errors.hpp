#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace consensus {

/// Base of every error raised by the library. Callers that only need a
/// message can catch this; the subclasses carry structured fields.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotSquare : public Error {
public:
  NotSquare(std::size_t rows, std::size_t cols);
  std::size_t rows, cols;
};

class NegativeWeight : public Error {
public:
  NegativeWeight(std::size_t i, std::size_t j, double value);
  std::size_t i, j;
  double value;
};

class RowSumViolation : public Error {
public:
  RowSumViolation(std::size_t row, double sum);
  std::size_t row;
  double sum;
};

/// `row` is the 1-based data row of the matrix file; 0 refers to the header.
class ParseError : public Error {
public:
  ParseError(std::size_t row, std::string reason);
  std::size_t row;
  std::string reason;
};

class BadParameter : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  DimensionMismatch(std::size_t expected, std::size_t got);
  std::size_t expected, got;
};

class NotSymmetric : public Error {
public:
  using Error::Error;
};

class NoConvergence : public Error {
public:
  NoConvergence(int sweep_cap, double residual);
  int sweep_cap;
  double residual;
};

class DominantNotSimple : public Error {
public:
  using Error::Error;
};

class AssumptionViolated : public Error {
public:
  using Error::Error;
};

class NotConvergent : public Error {
public:
  using Error::Error;
};

class BadSpectrum : public Error {
public:
  using Error::Error;
};

class DegenerateSpectrum : public Error {
public:
  using Error::Error;
};

class NormalizationFailed : public Error {
public:
  explicit NormalizationFailed(double residual);
  double residual;
};

class InsufficientData : public Error {
public:
  InsufficientData(std::size_t usable, std::size_t required);
  std::size_t usable, required;
};

}  // namespace consensus
