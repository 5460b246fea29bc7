#pragma once

#include <algorithm>

#include "anmult/exact/reconstruct.hpp"
#include "anmult/weights.hpp"

namespace anmult {

/// Theta(s) of a fixed orbit label as an exact function of N. (N+1)^s Theta(s)
/// is a polynomial of degree at most 2s+1, so it is interpolated and checked
/// on a few extra ranks.
inline RatFuncN theta_closed_form(const OrbitLabel& top, int s, std::size_t check_count = 3) {
  if (s < 1) throw DomainError("theta degree must be positive");
  const int first = std::max(static_cast<int>(top.size()), 1);
  std::vector<SamplePoint> points;
  for (int n = first; n < first + 2 * s + 2 + static_cast<int>(check_count); ++n) {
    Rational v = theta_power(s, to_dynkin(top, n));
    v *= pow(Rational(n + 1), static_cast<unsigned>(s));
    points.emplace_back(n, v);
  }
  const auto p = stable_poly_interpolate(points, check_count);
  if (!p) throw ValidationError("theta closed form did not stabilize");
  PolyN den = PolyN::constant(Rational(1));
  for (int k = 0; k < s; ++k) den *= PolyN::linear(1);
  return RatFuncN(*p, den);
}

}  // namespace anmult
