#pragma once

#include <string>
#include <utility>

#include "anmult/exact/poly.hpp"

namespace anmult {

/// Rational function of N kept in canonical form: gcd(num, den) = 1 and the
/// denominator is monic, so equal functions compare equal structurally.
class RatFuncN {
 public:
  RatFuncN() : den_(PolyN::constant(Rational(1))) {}
  RatFuncN(const PolyN& p) : num_(p), den_(PolyN::constant(Rational(1))) {}  // NOLINT(implicit)
  RatFuncN(PolyN num, PolyN den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  const PolyN& numerator() const { return num_; }
  const PolyN& denominator() const { return den_; }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_zero() const { return num_.is_zero(); }

  bool has_pole(const Rational& n) const { return den_(n) == 0; }

  Rational operator()(const Rational& n) const {
    Rational d = den_(n);
    if (d == 0) throw DomainError("rational function has a pole at N = " + anmult::to_string(n));
    return num_(n) / d;
  }
  Rational operator()(long n) const { return (*this)(Rational(n)); }

  friend RatFuncN operator+(const RatFuncN& a, const RatFuncN& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RatFuncN operator-(const RatFuncN& a, const RatFuncN& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RatFuncN operator*(const RatFuncN& a, const RatFuncN& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend RatFuncN operator/(const RatFuncN& a, const RatFuncN& b) {
    if (b.is_zero()) throw DomainError("rational function division by zero");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  friend bool operator==(const RatFuncN& a, const RatFuncN& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string(const std::string& var = "N") const {
    if (is_polynomial()) return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw DomainError("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = PolyN::constant(Rational(1));
      return;
    }
    PolyN g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
    const Rational lead = den_.leading();
    num_ *= Rational(1) / lead;
    den_ *= Rational(1) / lead;
  }

  PolyN num_;
  PolyN den_;
};

}  // namespace anmult
