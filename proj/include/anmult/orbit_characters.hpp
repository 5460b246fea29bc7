#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "anmult/exact/matrix.hpp"
#include "anmult/exact/poly.hpp"
#include "anmult/partitions.hpp"
#include "anmult/weights.hpp"

namespace anmult {

/// Orbit character ch_s expressed on products of power sums p_mu of N+1
/// independent variables; each coefficient is a polynomial in N. Partitions
/// that do not appear have coefficient zero.
class PowerSumExpansion {
 public:
  PowerSumExpansion() = default;
  PowerSumExpansion(int degree, std::map<Partition, PolyN> terms) : degree_(degree), terms_(std::move(terms)) {}

  int degree() const { return degree_; }
  const std::map<Partition, PolyN>& terms() const { return terms_; }

  PolyN coefficient(const Partition& mu) const {
    auto it = terms_.find(mu);
    return it == terms_.end() ? PolyN{} : it->second;
  }

  std::map<Partition, Rational> evaluate(long rank) const {
    std::map<Partition, Rational> out;
    for (const auto& [mu, poly] : terms_) {
      Rational v = poly(rank);
      if (v != 0) out.emplace(mu, std::move(v));
    }
    return out;
  }

 private:
  int degree_ = 0;
  std::map<Partition, PolyN> terms_;
};

namespace detail {

/// Small concurrent memo: racing writers store the same value, readers share.
template <class Key, class Value>
class SharedCache {
 public:
  template <class Make>
  std::shared_ptr<const Value> get(const Key& key, Make&& make) {
    {
      std::shared_lock lock(mutex_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    auto value = std::make_shared<const Value>(make());
    std::unique_lock lock(mutex_);
    return map_.try_emplace(key, std::move(value)).first->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const Value>> map_;
};

using PowerSumCoefficients = std::map<Partition, Integer>;

PowerSumCoefficients augmented_monomial_to_power_sums(const Partition& eta);

inline PowerSumCoefficients compute_augmented(const Partition& eta) {
  if (eta.empty()) return {{Partition{}, Integer(1)}};
  const int a = eta[0];
  const std::vector<int> rest(eta.parts().begin() + 1, eta.parts().end());
  PowerSumCoefficients out;
  // p_a times the shorter augmented monomial
  for (const auto& [mu, c] : augmented_monomial_to_power_sums(Partition(rest))) {
    std::vector<int> parts = mu.parts();
    parts.push_back(a);
    std::sort(parts.begin(), parts.end(), std::greater<>());
    out[Partition(std::move(parts))] += c;
  }
  // minus the terms where the new variable collides with an existing one
  for (std::size_t i = 0; i < rest.size(); ++i) {
    std::vector<int> merged = rest;
    merged[i] += a;
    std::sort(merged.begin(), merged.end(), std::greater<>());
    for (const auto& [mu, c] : augmented_monomial_to_power_sums(Partition(std::move(merged)))) out[mu] -= c;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

/// Augmented monomial sum over injective placements, sum x_{i1}^{e1} x_{i2}^{e2}...,
/// as integer combination of power-sum products.
inline PowerSumCoefficients augmented_monomial_to_power_sums(const Partition& eta) {
  static SharedCache<Partition, PowerSumCoefficients> cache;
  return *cache.get(eta, [&] { return compute_augmented(eta); });
}

inline void compositions(int remaining, std::size_t slots, std::vector<int>& prefix,
                         const std::function<void(const std::vector<int>&)>& visit) {
  if (prefix.size() + 1 == slots) {
    prefix.push_back(remaining);
    visit(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    prefix.push_back(e);
    compositions(remaining - e, slots, prefix, visit);
    prefix.pop_back();
  }
}

inline PowerSumExpansion compute_orbit_expansion(const OrbitLabel& q, int s) {
  const std::size_t sigma = q.size();
  if (sigma == 0) return {s, {}};

  // Collect multinomial(s; e) * prod q_j^{e_j} by the multiset of nonzero exponents.
  std::map<Partition, Integer> weight_by_eta;
  std::vector<int> prefix;
  const Integer s_fact = factorial(static_cast<unsigned long>(s));
  compositions(s, sigma, prefix, [&](const std::vector<int>& e) {
    Integer coef = s_fact;
    std::vector<int> eta;
    for (std::size_t j = 0; j < sigma; ++j) {
      if (e[j] == 0) continue;
      coef /= factorial(static_cast<unsigned long>(e[j]));
      Integer power;
      mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(q[j]), static_cast<unsigned long>(e[j]));
      coef *= power;
      eta.push_back(e[j]);
    }
    std::sort(eta.begin(), eta.end(), std::greater<>());
    weight_by_eta[Partition(std::move(eta))] += coef;
  });

  Integer symmetry(1);
  for (std::size_t i = 0; i < sigma;) {
    std::size_t j = i;
    while (j < sigma && q[j] == q[i]) ++j;
    symmetry *= factorial(j - i);
    i = j;
  }

  std::map<Partition, PolyN> terms;
  for (const auto& [eta, weight] : weight_by_eta) {
    const long r = static_cast<long>(eta.size());
    // zero-exponent parts fill the remaining slots: (N+1-r)(N-r)...(N+2-sigma)
    const PolyN slots = PolyN::shifted_product(2 - static_cast<long>(sigma), 1 - r);
    for (const auto& [mu, c] : augmented_monomial_to_power_sums(eta))
      terms[mu] += slots * make_rational(weight * c, symmetry);
  }
  std::erase_if(terms, [](const auto& kv) { return kv.second.is_zero(); });
  return {s, std::move(terms)};
}

}  // namespace detail

/// ch_s of the Weyl orbit with label q, expanded formally on power-sum products.
/// Results are memoized per (q, s) in a process-wide concurrent cache.
inline std::shared_ptr<const PowerSumExpansion> orbit_character_expansion(const OrbitLabel& q, int s) {
  if (s < 1) throw DomainError("character degree must be positive");
  static detail::SharedCache<std::pair<OrbitLabel, int>, PowerSumExpansion> cache;
  return cache.get({q, s}, [&] { return detail::compute_orbit_expansion(q, s); });
}

/// Coefficient of p_idx in ch_|idx| of the orbit q, at rank N. Only partitions
/// without unit parts are observable (the power sum of degree one vanishes on
/// the weight space), so those are the only ones accepted.
inline Rational cof(const OrbitLabel& q, const Partition& idx, int rank) {
  if (idx.contains_one()) throw DomainError("coefficient not physical: index " + idx.to_string() + " contains a part 1");
  if (idx.empty()) throw DomainError("coefficient index must be nonempty");
  return orbit_character_expansion(q, idx.weight())->coefficient(idx)(rank);
}

/// sum_alpha m(alpha) cof(rho_alpha, idx, N); orbits that do not fit in N+1
/// slots contribute nothing.
inline Rational rep_cof(const MultiplicityTable& t, const Partition& idx, int rank) {
  Rational total(0);
  for (const auto& [label, m] : t.entries()) {
    if (m == 0 || static_cast<int>(label.size()) > rank + 1) continue;
    total += Rational(m) * cof(label, idx, rank);
  }
  return total;
}

/// Coefficients of a symmetric polynomial of degree s in N+1 variables on the
/// monomial symmetric functions m_lambda, lambda with at most N+1 parts.
using MonomialCoefficients = std::map<Partition, Rational>;

/// Literal expansion of ch_s over the enumerated orbit, then decomposition into
/// power-sum products by exact linear algebra. When N+1 < s the power-sum
/// products are linearly dependent in N+1 variables and only the monomial
/// coefficients are meaningful (`unique` is false).
struct BruteForceExpansion {
  int degree = 0;
  int rank = 0;
  MonomialCoefficients monomial;
  bool unique = false;
  std::map<Partition, Rational> power_sum;
};

namespace detail {

/// Coefficient of x_1^{l_1}...x_k^{l_k} in p_mu: ways to distribute the parts of
/// mu over the k variables with the prescribed exponent sums.
inline Integer power_sum_monomial_coefficient(const Partition& mu, const Partition& lambda) {
  std::vector<int> remaining = lambda.parts();
  Integer count(0);
  std::function<void(std::size_t)> place = [&](std::size_t j) {
    if (j == mu.size()) {
      for (int r : remaining)
        if (r != 0) return;
      ++count;
      return;
    }
    for (auto& r : remaining) {
      if (r < mu[j]) continue;
      r -= mu[j];
      place(j + 1);
      r += mu[j];
    }
  };
  place(0);
  return count;
}

}  // namespace detail

/// Rewrites power-sum coefficients as monomial coefficients in N+1 variables.
inline MonomialCoefficients to_monomial_basis(const std::map<Partition, Rational>& power_sum, int s, int rank) {
  MonomialCoefficients out;
  for (const auto& lambda : enumerate_partitions(s)) {
    if (static_cast<int>(lambda.size()) > rank + 1) continue;
    Rational acc(0);
    for (const auto& [mu, c] : power_sum) acc += c * Rational(detail::power_sum_monomial_coefficient(mu, lambda));
    if (acc != 0) out.emplace(lambda, std::move(acc));
  }
  return out;
}

inline BruteForceExpansion brute_force_expansion(const OrbitLabel& q, int s, int rank) {
  if (s < 1 || s > 8) throw DomainError("brute-force expansion supports degrees 1..8");
  const auto weights = orbit_weights(q, rank, 100000);
  const auto lambdas = [&] {
    std::vector<Partition> out;
    for (auto& l : enumerate_partitions(s))
      if (static_cast<int>(l.size()) <= rank + 1) out.push_back(std::move(l));
    return out;
  }();

  BruteForceExpansion result;
  result.degree = s;
  result.rank = rank;
  for (const auto& lambda : lambdas) {
    Integer multinomial = factorial(static_cast<unsigned long>(s));
    for (int part : lambda.parts()) multinomial /= factorial(static_cast<unsigned long>(part));
    Integer acc(0);
    for (const auto& w : weights) {
      Integer term(1);
      for (std::size_t i = 0; i < lambda.size() && term != 0; ++i) {
        Integer power;
        mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(w[i]), static_cast<unsigned long>(lambda[i]));
        term *= power;
      }
      acc += term;
    }
    acc *= multinomial;
    if (acc != 0) result.monomial.emplace(lambda, Rational(acc));
  }

  const auto mus = enumerate_partitions(s);
  ExactMatrix transition(lambdas.size(), mus.size());
  std::vector<Rational> rhs(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    for (std::size_t j = 0; j < mus.size(); ++j)
      transition(i, j) = Rational(detail::power_sum_monomial_coefficient(mus[j], lambdas[i]));
    auto it = result.monomial.find(lambdas[i]);
    if (it != result.monomial.end()) rhs[i] = it->second;
  }
  const auto analysis = analyze_linear_system(transition, rhs);
  if (!analysis.consistent) throw ValidationError("orbit character is not symmetric");
  if (analysis.solution) {
    result.unique = true;
    for (std::size_t j = 0; j < mus.size(); ++j)
      if ((*analysis.solution)[j] != 0) result.power_sum.emplace(mus[j], (*analysis.solution)[j]);
  }
  return result;
}

/// Coefficient-wise comparison of the symbolic expansion at N with the brute
/// force; in the dependent regime (N+1 < s) the comparison is in the monomial basis.
inline bool expansion_agrees(const PowerSumExpansion& symbolic, const BruteForceExpansion& brute) {
  const auto evaluated = symbolic.evaluate(brute.rank);
  if (brute.unique) return evaluated == brute.power_sum;
  return to_monomial_basis(evaluated, brute.degree, brute.rank) == brute.monomial;
}

}  // namespace anmult
