#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "anmult/exact/rational.hpp"

namespace anmult {

/// Univariate polynomial in the rank variable N with exact rational coefficients.
/// Coefficients are stored lowest power first; the highest stored coefficient is
/// never zero, so the zero polynomial has no coefficients and degree -1.
class PolyN {
 public:
  PolyN() = default;

  explicit PolyN(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  /// Lowest power first: PolyN{6, 14, 11, 4, 1} is N^4 + 4N^3 + 11N^2 + 14N + 6.
  PolyN(std::initializer_list<long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
  }

  static PolyN constant(const Rational& c) { return PolyN(std::vector<Rational>{c}); }
  static PolyN variable() { return PolyN(std::vector<Rational>{Rational(0), Rational(1)}); }
  /// N + shift
  static PolyN linear(long shift) { return PolyN(std::vector<Rational>{Rational(shift), Rational(1)}); }

  /// Highest power first, as polynomials are usually written down.
  static PolyN descending(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.emplace_back(v);
    std::reverse(c.begin(), c.end());
    return PolyN(std::move(c));
  }

  /// (N + lo)(N + lo + 1)...(N + hi); the empty product 1 when lo > hi.
  static PolyN shifted_product(long lo, long hi) {
    PolyN r = constant(Rational(1));
    for (long k = lo; k <= hi; ++k) r *= linear(k);
    return r;
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Rational coefficient(int power) const {
    if (power < 0 || power > degree()) return Rational(0);
    return coeffs_[static_cast<std::size_t>(power)];
  }

  Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& n) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc *= n;
      acc += *it;
    }
    return acc;
  }
  Rational operator()(long n) const { return (*this)(Rational(n)); }

  PolyN& operator+=(const PolyN& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  PolyN& operator-=(const PolyN& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  PolyN& operator*=(const Rational& c) {
    if (c == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& x : coeffs_) x *= c;
    return *this;
  }
  PolyN& operator*=(const PolyN& o) {
    *this = *this * o;
    return *this;
  }

  friend PolyN operator+(PolyN a, const PolyN& b) { return a += b; }
  friend PolyN operator-(PolyN a, const PolyN& b) { return a -= b; }
  friend PolyN operator-(PolyN a) { return a *= Rational(-1); }
  friend PolyN operator*(PolyN a, const Rational& c) { return a *= c; }
  friend PolyN operator*(const Rational& c, PolyN a) { return a *= c; }
  friend PolyN operator*(const PolyN& a, const PolyN& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return PolyN(std::move(r));
  }

  friend bool operator==(const PolyN& a, const PolyN& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division; throws on division by zero.
  friend std::pair<PolyN, PolyN> divmod(const PolyN& a, const PolyN& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    PolyN rem = a;
    if (a.degree() < b.degree()) return {PolyN{}, rem};
    std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    const Rational lead = b.leading();
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
      const int shift = rem.degree() - b.degree();
      const Rational factor = rem.leading() / lead;
      quot[static_cast<std::size_t>(shift)] = factor;
      for (int i = 0; i <= b.degree(); ++i)
        rem.coeffs_[static_cast<std::size_t>(i + shift)] -= factor * b.coeffs_[static_cast<std::size_t>(i)];
      rem.trim();
    }
    return {PolyN(std::move(quot)), rem};
  }

  PolyN monic() const {
    if (is_zero()) return {};
    return *this * (Rational(1) / leading());
  }

  /// Multiplies by the least common denominator of the coefficients and divides
  /// by the content, giving a primitive integer polynomial with positive leading
  /// coefficient. Returns that scale factor as well.
  std::pair<PolyN, Rational> primitive() const {
    if (is_zero()) return {PolyN{}, Rational(1)};
    Integer den(1), num(0);
    for (const auto& c : coeffs_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    for (const auto& c : coeffs_) {
      Integer v = c.get_num() * (den / c.get_den());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_mpz_t());
    }
    Rational scale = make_rational(den, num);
    if (leading() < 0) scale = -scale;
    return {*this * scale, scale};
  }

  /// Renders with the given variable name, highest power first: "N^2 - 3/2*N + 1".
  std::string to_string(const std::string& var = "N") const {
    if (is_zero()) return "0";
    std::string out;
    for (int p = degree(); p >= 0; --p) {
      const Rational& c = coeffs_[static_cast<std::size_t>(p)];
      if (c == 0) continue;
      const bool negative = c < 0;
      const Rational mag = negative ? Rational(-c) : c;
      if (out.empty()) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      const bool unit = (mag == 1);
      if (p == 0) {
        out += anmult::to_string(mag);
      } else {
        if (!unit) out += anmult::to_string(mag) + "*";
        out += var;
        if (p > 1) out += "^" + std::to_string(p);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

/// Monic greatest common divisor (zero if both are zero).
inline PolyN gcd(PolyN a, PolyN b) {
  while (!b.is_zero()) {
    auto rem = divmod(a, b).second;
    a = std::move(b);
    b = std::move(rem);
  }
  return a.monic();
}

}  // namespace anmult
