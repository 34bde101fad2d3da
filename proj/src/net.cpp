#include "consensus/net.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "consensus/errors.hpp"
#include "consensus/format.hpp"

namespace consensus {

namespace {

using Pattern = std::vector<std::vector<bool>>;

Pattern pattern_of(const Matrix& m) {
  Pattern p(m.rows(), std::vector<bool>(m.cols(), false));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) p[i][j] = m(i, j) > 0.0;
  return p;
}

Pattern boolean_product(const Pattern& a, const Pattern& b) {
  const std::size_t n = a.size();
  Pattern c(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (!a[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (b[k][j]) c[i][j] = true;
    }
  return c;
}

bool all_true(const Pattern& p) {
  for (const auto& row : p)
    for (bool v : row)
      if (!v) return false;
  return true;
}

}  // namespace

WeightedAdjacency validate(Matrix weights) {
  if (weights.rows() != weights.cols()) throw NotSquare(weights.rows(), weights.cols());
  const std::size_t n = weights.rows();
  if (n < 2) throw BadParameter("weighted adjacency needs n >= 2, got " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = weights(i, j);
      if (!std::isfinite(w)) throw BadParameter("non-finite weight at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      if (w < 0.0) throw NegativeWeight(i, j, w);
      sum += w;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) throw RowSumViolation(i, sum);
  }
  return WeightedAdjacency(std::move(weights));
}

bool is_symmetric(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - m(j, i)) > tol) return false;
  return true;
}

StructureReport analyze_structure(const WeightedAdjacency& a) {
  const std::size_t n = a.n();
  StructureReport report;
  report.symmetric = is_symmetric(a.weights());

  const Pattern p = pattern_of(a.weights());

  // sum_{k=0}^{n-1} A^k > 0
  Pattern reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
  Pattern power = reach;
  for (std::size_t k = 1; k < n; ++k) {
    power = boolean_product(power, p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (power[i][j]) reach[i][j] = true;
  }
  report.irreducible = all_true(reach);

  if (report.irreducible) {
    const std::size_t wielandt = (n - 1) * (n - 1) + 1;
    power = p;
    for (std::size_t k = 1; k <= wielandt; ++k) {
      if (all_true(power)) {
        report.primitive = true;
        report.witness_k = k;
        break;
      }
      power = boolean_product(power, p);
    }
  }
  return report;
}

WeightedAdjacency make_ring(std::size_t n, double self_loop) {
  if (n < 3) throw BadParameter("ring needs n >= 3, got " + std::to_string(n));
  if (!(self_loop >= 0.0 && self_loop < 1.0))
    throw BadParameter("self-loop weight must lie in [0, 1), got " + fmt_real(self_loop));
  const double neighbour = (1.0 - self_loop) / 2.0;
  Matrix w(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    w(i, i) = self_loop;
    w(i, (i + 1) % n) = neighbour;
    w(i, (i + n - 1) % n) = neighbour;
  }
  return validate(std::move(w));
}

WeightedAdjacency read_matrix(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  {
    if (!std::getline(in, line)) throw ParseError(0, "empty input");
    std::istringstream header(line);
    std::string tok, extra;
    if (!(header >> tok)) throw ParseError(0, "missing dimension");
    std::size_t pos = 0;
    try {
      n = std::stoul(tok, &pos);
    } catch (const std::exception&) {
      throw ParseError(0, "dimension '" + tok + "' is not an integer");
    }
    if (pos != tok.size()) throw ParseError(0, "dimension '" + tok + "' is not an integer");
    if (header >> extra) throw ParseError(0, "unexpected token after dimension");
    if (n == 0) throw ParseError(0, "dimension must be positive");
  }

  Matrix w(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!std::getline(in, line)) throw ParseError(r + 1, "missing row");
    std::istringstream row(line);
    std::string tok;
    std::size_t count = 0;
    while (row >> tok) {
      double v = 0.0;
      if (!parse_real(tok, v)) throw ParseError(r + 1, "'" + tok + "' is not a number");
      if (count < n) w(r, count) = v;
      ++count;
    }
    if (count != n)
      throw ParseError(r + 1, "wrong count: expected " + std::to_string(n) + " values, got " + std::to_string(count));
  }
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) throw ParseError(n + 1, "trailing content after matrix");
  return validate(std::move(w));
}

WeightedAdjacency read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_matrix(in);
}

void write_matrix(const WeightedAdjacency& a, std::ostream& out) {
  const std::size_t n = a.n();
  out << n << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out << ' ';
      out << fmt_real(a(i, j), 17);
    }
    out << '\n';
  }
}

void write_matrix(const WeightedAdjacency& a, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_matrix(a, out);
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace consensus
