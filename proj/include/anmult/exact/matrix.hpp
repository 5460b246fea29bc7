#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "anmult/exact/rational.hpp"

namespace anmult {

/// Dense row-major matrix of exact rationals.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static ExactMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    ExactMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DomainError("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static ExactMatrix identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  /// Appends a row; the first row fixes the column count of an empty matrix.
  void append_row(std::span<const Rational> row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw DomainError("row length does not match column count");
    entries_.insert(entries_.end(), row.begin(), row.end());
    ++rows_;
  }

  std::vector<Rational> operator*(std::span<const Rational> x) const {
    if (x.size() != cols_) throw DomainError("dimension mismatch in matrix-vector product");
    std::vector<Rational> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

struct LinearSolution {
  std::vector<Rational> x;
  std::size_t rank = 0;
  std::size_t nullity = 0;
};

/// Outcome of a fraction-free elimination, without throwing.
struct LinearAnalysis {
  bool consistent = true;
  std::size_t rank = 0;
  std::size_t nullity = 0;
  std::optional<std::vector<Rational>> solution;  // present iff consistent and nullity == 0
};

namespace detail {

inline std::vector<Integer> integer_row(const ExactMatrix& a, std::span<const Rational> b, std::size_t i) {
  Integer lcm(1);
  for (std::size_t j = 0; j < a.cols(); ++j)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a(i, j).get_den().get_mpz_t());
  mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), b[i].get_den().get_mpz_t());
  std::vector<Integer> row(a.cols() + 1);
  for (std::size_t j = 0; j < a.cols(); ++j) row[j] = a(i, j).get_num() * (lcm / a(i, j).get_den());
  row[a.cols()] = b[i].get_num() * (lcm / b[i].get_den());
  return row;
}

}  // namespace detail

/// Bareiss fraction-free elimination on [A | b]. Every row is first scaled to
/// integers; all later divisions by the previous pivot are exact, so entries stay
/// minors of the scaled matrix.
inline LinearAnalysis analyze_linear_system(const ExactMatrix& a, std::span<const Rational> b) {
  if (a.rows() != b.size()) throw DomainError("right-hand side length does not match row count");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::vector<std::vector<Integer>> rows;
  rows.reserve(m);
  for (std::size_t i = 0; i < m; ++i) rows.push_back(detail::integer_row(a, b, i));

  std::vector<std::size_t> pivot_cols;
  Integer prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    // smallest nonzero pivot keeps the entries short
    std::optional<std::size_t> best;
    for (std::size_t i = r; i < m; ++i) {
      if (rows[i][c] == 0) continue;
      if (!best || mpz_sizeinbase(rows[i][c].get_mpz_t(), 2) < mpz_sizeinbase(rows[*best][c].get_mpz_t(), 2))
        best = i;
    }
    if (!best) continue;
    std::swap(rows[r], rows[*best]);
    const Integer& piv = rows[r][c];
    for (std::size_t i = r + 1; i < m; ++i) {
      const Integer factor = rows[i][c];
      for (std::size_t j = c + 1; j <= n; ++j) {
        Integer v = piv * rows[i][j] - factor * rows[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        rows[i][j] = std::move(v);
      }
      rows[i][c] = 0;
    }
    prev = piv;
    pivot_cols.push_back(c);
    ++r;
  }

  LinearAnalysis out;
  out.rank = r;
  out.nullity = n - r;
  for (std::size_t i = r; i < m; ++i)
    if (rows[i][n] != 0) out.consistent = false;
  if (!out.consistent || out.nullity != 0) return out;

  std::vector<Rational> x(n);
  for (std::size_t k = r; k-- > 0;) {
    const std::size_t c = pivot_cols[k];
    Rational acc(rows[k][n]);
    for (std::size_t j = c + 1; j < n; ++j)
      if (rows[k][j] != 0) acc -= Rational(rows[k][j]) * x[j];
    x[c] = acc / Rational(rows[k][c]);
  }
  out.solution = std::move(x);
  return out;
}

/// Unique exact solution of A x = b; throws LinearSystemError when the system is
/// inconsistent or has a nontrivial null space.
inline LinearSolution solve_linear_exact(const ExactMatrix& a, std::span<const Rational> b) {
  LinearAnalysis an = analyze_linear_system(a, b);
  if (!an.consistent) throw LinearSystemError(LinearSystemError::Kind::inconsistent, an.rank, an.nullity);
  if (an.nullity != 0) throw LinearSystemError(LinearSystemError::Kind::underdetermined, an.rank, an.nullity);
  return {std::move(*an.solution), an.rank, an.nullity};
}

}  // namespace anmult
