#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anmult/exact/ratfunc.hpp"
#include "anmult/formulas/spec.hpp"
#include "anmult/orbit_characters.hpp"

namespace anmult {

/// Theta(0..max) of a top label at a rank; index 0 holds N+1.
struct ThetaData {
  int rank = 0;
  std::vector<Rational> powers;

  static ThetaData of(const OrbitLabel& top, int rank, int max_degree) {
    return {rank, theta_powers(to_dynkin(top, rank), max_degree)};
  }

  Rational product(const Partition& degrees) const {
    Rational v(1);
    for (int d : degrees.parts()) v *= powers.at(static_cast<std::size_t>(d));
    return v;
  }
};

/// Resolved values of the undetermined factors at one rank.
using SymbolValues = std::map<GSymbol, Rational>;

/// An identity  Phi = A(N) * rep_cof(id) + B(top, N) * dim  that vanishes on true
/// multiplicity tables. Transcribed and derived formulas both reduce to this.
struct IdentityWeights {
  Rational cof_weight;
  Rational dim_weight;
};

struct MultiplicityIdentity {
  std::string name;
  Partition id;
  /// nullopt where the identity is not defined (a pole, or a symbol without a value)
  std::function<std::optional<IdentityWeights>(const OrbitLabel& top, int rank)> weights;
};

namespace detail {

inline std::optional<Rational> factor_value(const SymbolicFactor& f, const SymbolValues& symbols, int rank) {
  Rational v = Rational(f.constant) * f.poly(rank);
  if (f.symbol) {
    auto it = symbols.find(*f.symbol);
    if (it == symbols.end()) return std::nullopt;
    v *= it->second;
  }
  return v;
}

}  // namespace detail

/// Sum over theta terms of coefficient * f(N) * symbol(N) * prod Theta(d).
inline std::optional<Rational> theta_block(const FormulaSpec& spec, const ThetaData& theta, const SymbolValues& symbols) {
  Rational total(0);
  for (const auto& t : spec.theta_terms) {
    Rational v = Rational(t.coefficient) * t.f(theta.rank) * theta.product(t.thetas);
    if (t.symbol) {
      auto it = symbols.find(*t.symbol);
      if (it == symbols.end()) return std::nullopt;
      v *= it->second;
    }
    total += v;
  }
  return total;
}

inline std::optional<IdentityWeights> spec_weights(const FormulaSpec& spec, const ThetaData& theta, const SymbolValues& symbols) {
  auto a = detail::factor_value(spec.cof_factor, symbols, theta.rank);
  auto block = theta_block(spec, theta, symbols);
  if (!a || !block) return std::nullopt;
  Rational b = *block;
  for (const auto& d : spec.dim_terms) {
    auto v = detail::factor_value(d, symbols, theta.rank);
    if (!v) return std::nullopt;
    b += *v;
  }
  return IdentityWeights{*a, b};
}

/// Phi split as constant + sum_sym coefficient * value(sym), for fitting symbols.
struct PhiLinear {
  Rational constant;
  std::map<GSymbol, Rational> coefficients;
};

inline PhiLinear phi_linear(const FormulaSpec& spec, const Rational& rep_cof_value, const Integer& dim, const ThetaData& theta) {
  PhiLinear out;
  auto add = [&out](const std::optional<GSymbol>& s, const Rational& v) {
    if (s) out.coefficients[*s] += v;
    else out.constant += v;
  };
  add(spec.cof_factor.symbol, rep_cof_value * Rational(spec.cof_factor.constant) * spec.cof_factor.poly(theta.rank));
  for (const auto& d : spec.dim_terms) add(d.symbol, Rational(dim) * Rational(d.constant) * d.poly(theta.rank));
  for (const auto& t : spec.theta_terms)
    add(t.symbol, Rational(dim) * Rational(t.coefficient) * t.f(theta.rank) * theta.product(t.thetas));
  return out;
}

/// A fitted identity  rep_cof(id)/dim = sum_Q c_Q(N) prod_{d in Q} Theta(d).
/// The empty partition stands for the constant term.
struct DerivedFormula {
  Partition id;
  std::map<Partition, RatFuncN> coefficients;
  std::vector<int> fit_ranks;
  std::vector<int> validation_ranks;
  int min_rank = 0;  // below this the fitted coefficients are not trusted
  std::size_t validated_pairs = 0;

  int max_theta_degree() const {
    int m = 1;
    for (const auto& [q, c] : coefficients)
      for (int d : q.parts()) m = std::max(m, d);
    return m;
  }

  bool has_pole(int rank) const {
    for (const auto& [q, c] : coefficients)
      if (c.has_pole(Rational(rank))) return true;
    return false;
  }

  std::optional<Rational> value(const ThetaData& theta) const {
    Rational total(0);
    for (const auto& [q, c] : coefficients) {
      if (c.has_pole(Rational(theta.rank))) return std::nullopt;
      total += c(theta.rank) * theta.product(q);
    }
    return total;
  }
};

inline MultiplicityIdentity identity_of(const DerivedFormula& f) {
  const int max_degree = std::max(f.id.weight(), f.max_theta_degree());
  return {"derived " + f.id.compact(), f.id, [f, max_degree](const OrbitLabel& top, int rank) -> std::optional<IdentityWeights> {
            if (rank < f.min_rank) return std::nullopt;
            auto v = f.value(ThetaData::of(top, rank, max_degree));
            if (!v) return std::nullopt;
            return IdentityWeights{Rational(1), -*v};
          }};
}

/// Phi of an identity on a hypothesis table, with Theta taken at its top weight.
inline std::optional<Rational> phi_residual(const MultiplicityIdentity& identity, const MultiplicityTable& hypothesis, int rank) {
  auto w = identity.weights(hypothesis.top(), rank);
  if (!w) return std::nullopt;
  return rep_cof(hypothesis, identity.id, rank) * w->cof_weight + Rational(rep_dimension(hypothesis, rank)) * w->dim_weight;
}

}  // namespace anmult
