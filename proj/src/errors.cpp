#include "consensus/errors.hpp"

#include "consensus/format.hpp"

namespace consensus {

NotSquare::NotSquare(std::size_t r, std::size_t c)
    : Error("matrix is not square: " + std::to_string(r) + "x" + std::to_string(c)), rows(r), cols(c) {}

NegativeWeight::NegativeWeight(std::size_t i_, std::size_t j_, double v)
    : Error("negative weight a[" + std::to_string(i_) + "][" + std::to_string(j_) + "] = " + fmt_real(v)),
      i(i_), j(j_), value(v) {}

RowSumViolation::RowSumViolation(std::size_t r, double s)
    : Error("row " + std::to_string(r) + " sums to " + fmt_real(s) + ", expected 1"), row(r), sum(s) {}

ParseError::ParseError(std::size_t r, std::string why)
    : Error("parse error at " + (r == 0 ? std::string("header") : "row " + std::to_string(r)) + ": " + why),
      row(r), reason(std::move(why)) {}

DimensionMismatch::DimensionMismatch(std::size_t e, std::size_t g)
    : Error("dimension mismatch: expected " + std::to_string(e) + ", got " + std::to_string(g)),
      expected(e), got(g) {}

NoConvergence::NoConvergence(int cap, double res)
    : Error("Jacobi iteration did not converge within " + std::to_string(cap) +
            " sweeps (off-diagonal norm " + fmt_real(res) + ")"),
      sweep_cap(cap), residual(res) {}

NormalizationFailed::NormalizationFailed(double res)
    : Error("symmetric normalization did not reach row sums of 1 (residual " + fmt_real(res) + ")"),
      residual(res) {}

InsufficientData::InsufficientData(std::size_t u, std::size_t req)
    : Error("only " + std::to_string(u) + " usable points for rate fit, need " + std::to_string(req)),
      usable(u), required(req) {}

}  // namespace consensus
