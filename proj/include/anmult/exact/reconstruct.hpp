#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "anmult/exact/ratfunc.hpp"

namespace anmult {

using SamplePoint = std::pair<long, Rational>;

namespace detail {

inline void require_distinct(std::span<const SamplePoint> points) {
  std::set<long> seen;
  for (const auto& p : points)
    if (!seen.insert(p.first).second)
      throw DomainError("duplicate abscissa N = " + std::to_string(p.first));
}

inline PolyN vanishing_poly(std::span<const SamplePoint> points) {
  PolyN m = PolyN::constant(Rational(1));
  for (const auto& p : points) m *= PolyN::linear(-p.first);
  return m;
}

inline bool matches(const RatFuncN& f, std::span<const SamplePoint> points) {
  for (const auto& [x, y] : points) {
    if (f.has_pole(Rational(x)) || f(x) != y) return false;
  }
  return true;
}

}  // namespace detail

/// Unique polynomial of degree < points.size() through all points (Newton form).
inline PolyN poly_interpolate(std::span<const SamplePoint> points) {
  if (points.empty()) throw DomainError("interpolation needs at least one point");
  detail::require_distinct(points);
  const std::size_t n = points.size();
  std::vector<Rational> dd(n);
  for (std::size_t i = 0; i < n; ++i) dd[i] = points[i].second;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / Rational(points[i].first - points[i - level].first);

  PolyN result = PolyN::constant(dd[n - 1]);
  for (std::size_t k = n - 1; k-- > 0;) {
    result *= PolyN::linear(-points[k].first);
    result += PolyN::constant(dd[k]);
  }
  return result;
}

inline PolyN poly_interpolate(const std::vector<SamplePoint>& points) {
  return poly_interpolate(std::span<const SamplePoint>(points));
}

/// Rational function num/den with deg num <= max_num_deg and deg den <= max_den_deg
/// through every point, found by the extended Euclidean algorithm on the
/// interpolating polynomial modulo prod (N - x_i). The result is checked against
/// all points; anything else throws ValidationError("reconstruction failed").
inline RatFuncN ratfunc_reconstruct(std::span<const SamplePoint> points, int max_num_deg, int max_den_deg) {
  if (max_num_deg < 0 || max_den_deg < 0) throw DomainError("degree bounds must be nonnegative");
  if (points.size() < static_cast<std::size_t>(max_num_deg + max_den_deg + 1))
    throw DomainError("too few points for the requested degree bounds");
  detail::require_distinct(points);

  PolyN r0 = detail::vanishing_poly(points);
  PolyN r1 = poly_interpolate(points);
  PolyN t0;
  PolyN t1 = PolyN::constant(Rational(1));
  while (!r1.is_zero() && r1.degree() > max_num_deg) {
    auto [q, rem] = divmod(r0, r1);
    PolyN t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1.is_zero() || t1.degree() > max_den_deg) throw ValidationError("reconstruction failed");
  for (const auto& p : points)
    if (t1(p.first) == 0) throw ValidationError("reconstruction failed");
  RatFuncN f(r1, t1);
  if (f.numerator().degree() > max_num_deg || f.denominator().degree() > max_den_deg ||
      !detail::matches(f, points))
    throw ValidationError("reconstruction failed");
  return f;
}

inline RatFuncN ratfunc_reconstruct(const std::vector<SamplePoint>& points, int max_num_deg, int max_den_deg) {
  return ratfunc_reconstruct(std::span<const SamplePoint>(points), max_num_deg, max_den_deg);
}

/// Polynomial through the leading points that also reproduces the last
/// `check_count` points; nullopt when the degree has not stabilized.
inline std::optional<PolyN> stable_poly_interpolate(std::span<const SamplePoint> points, std::size_t check_count) {
  if (points.size() <= check_count) return std::nullopt;
  const auto fit = points.first(points.size() - check_count);
  PolyN p = poly_interpolate(fit);
  for (const auto& [x, y] : points.subspan(fit.size()))
    if (p(x) != y) return std::nullopt;
  return p;
}

/// Degree-free rational reconstruction: Euclidean-remainder candidates built
/// from the leading points are tried in turn; the first one reproducing all
/// points (including the last `check_count`) wins.
inline std::optional<RatFuncN> reconstruct_rational(std::span<const SamplePoint> points, std::size_t check_count) {
  if (points.size() <= check_count) return std::nullopt;
  detail::require_distinct(points);
  const auto fit = points.first(points.size() - check_count);

  // every pair has deg r + deg t < points.size(), so two pairs that both
  // reproduce all points are the same function; take the first and only
  // normalize that one (the gcd is the expensive part)
  auto reproduces = [&](const PolyN& num, const PolyN& den) {
    if (den.is_zero()) return false;
    for (const auto& [x, y] : points) {
      const Rational d = den(x);
      if (d == 0 || num(x) != y * d) return false;
    }
    return true;
  };
  PolyN r0 = detail::vanishing_poly(fit);
  PolyN r1 = poly_interpolate(fit);
  PolyN t0;
  PolyN t1 = PolyN::constant(Rational(1));
  while (true) {
    if (reproduces(r1, t1)) return RatFuncN(r1, t1);
    if (r1.is_zero()) break;
    auto [q, rem] = divmod(r0, r1);
    PolyN t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return std::nullopt;
}

}  // namespace anmult
