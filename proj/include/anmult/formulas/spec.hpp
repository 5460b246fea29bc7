#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anmult/exact/poly.hpp"
#include "anmult/partitions.hpp"

namespace anmult {

/// Undetermined polynomial factors appearing in the transcribed formulas.
enum class GSymbol { g, g4, g5, g6, g22 };

inline constexpr std::array<GSymbol, 5> all_symbols{GSymbol::g, GSymbol::g4, GSymbol::g5, GSymbol::g6, GSymbol::g22};

inline std::string_view symbol_name(GSymbol s) {
  switch (s) {
    case GSymbol::g: return "g";
    case GSymbol::g4: return "g4";
    case GSymbol::g5: return "g5";
    case GSymbol::g6: return "g6";
    case GSymbol::g22: return "g22";
  }
  return "?";
}

inline GSymbol parse_symbol(std::string_view name) {
  for (GSymbol s : all_symbols)
    if (symbol_name(s) == name) return s;
  throw DomainError("unknown symbol '" + std::string(name) + "'");
}

/// constant * poly(N) * symbol(N)
struct SymbolicFactor {
  Integer constant{1};
  PolyN poly{1};
  std::optional<GSymbol> symbol;

  std::string describe() const {
    std::string out = constant.get_str();
    if (poly != PolyN{1}) out += "*(" + poly.to_string() + ")";
    if (symbol) out += "*" + std::string(symbol_name(*symbol));
    return out;
  }
};

/// coefficient * f(N) * symbol(N) * prod_{d in thetas} Theta(d)
struct ThetaTerm {
  Integer coefficient;
  std::string f_name;
  PolyN f;
  std::optional<GSymbol> symbol;
  Partition thetas;

  std::string describe() const {
    std::string out = (coefficient >= 0 ? "+" : "") + coefficient.get_str() + "*" + f_name;
    if (symbol) out += "*" + std::string(symbol_name(*symbol));
    for (int d : thetas.parts()) out += "*Theta(" + std::to_string(d) + ")";
    return out;
  }
};

/// Phi = rep_cof(id) * cof_factor + dim * (sum dim_terms + sum theta_terms).
struct FormulaSpec {
  Partition id;
  SymbolicFactor cof_factor;
  std::vector<SymbolicFactor> dim_terms;
  std::vector<ThetaTerm> theta_terms;

  std::vector<GSymbol> symbols() const {
    std::vector<GSymbol> out;
    auto add = [&out](const std::optional<GSymbol>& s) {
      if (s && std::find(out.begin(), out.end(), *s) == out.end()) out.push_back(*s);
    };
    add(cof_factor.symbol);
    for (const auto& t : dim_terms) add(t.symbol);
    for (const auto& t : theta_terms) add(t.symbol);
    std::sort(out.begin(), out.end());
    return out;
  }
};

namespace detail {

inline PolyN product_of(std::initializer_list<PolyN> factors) {
  PolyN r{1};
  for (const auto& f : factors) r *= f;
  return r;
}

inline PolyN lin(long k) { return PolyN::linear(k); }

struct CoefficientTable {
  std::string key;
  PolyN poly;
};

// Coefficient polynomials, keyed "<formula>_<theta monomial>".
inline const std::vector<CoefficientTable>& coefficient_tables() {
  using P = PolyN;
  static const std::vector<CoefficientTable> tables = [] {
    const PolyN n = PolyN::variable();
    std::vector<CoefficientTable> t{
        {"f7_7", P::descending({1, 6, 50, 160, 309, 314, 120})},
        {"f7_52", P::descending({1, 5, 21, 43, -70, -96})},
        {"f7_43", P::descending({1, 5, 9, 7, 62, 60})},
        {"f7_322", P::descending({2, 8, -5, -26, -15})},

        {"f52_7", P::descending({1, 7, 31, 85, 16, -236, -192, 0})},
        {"f52_52", P::descending({1, 8, 32, 80, 515, 1676, 1648, 72, -10080})},
        // printed with the N^2 term out of order
        {"f52_43", P::descending({6, 36, 13, -188, -1, 470, 840})},
        {"f52_322", P::descending({1, 7, 0, -70, 217, 987, -134, -840})},
        {"f52_32", P::descending({1, 10, -19, -392, -497, 3178, 9183, 6948, -604, -1680, 0})},
        {"f52_5", P::descending({1, 11, -2, -348, -1071, 231, 10856, 35458, 52712, 37224, 10080, 0})},

        {"f43_7", P::descending({1, 7, 19, 25, 76, 184, 120, 0})},
        {"f43_52", P::descending({6, 36, 13, -188, -1, 470, 840})},
        {"f43_43", P::descending({1, 8, 16, -16, 681, 2980, -986, -8060, -8400})},
        {"f43_322", P::descending({2, 14, 133, 525, -553, -3647, 1510, 4200})},
        {"f43_3", product_of({lin(-5), lin(-4), lin(-3), lin(-2), n, lin(1), lin(1), lin(1), lin(2), lin(4), lin(5), lin(6), lin(7)})},

        {"f322_7", P::descending({2, 12, 11, -36, -67, -30, 0})},
        {"f322_52", P::descending({1, 7, 0, -70, 217, 987, -134, -840})},
        {"f322_43", P::descending({2, 14, 133, 525, -553, -3647, 1510, 4200})},
        {"f322_322", P::descending({1, 8, -3, -130, 109, 1452, 5113, 6890, -4200})},
        {"f322_5", product_of({lin(-5), lin(-4), n, lin(1), lin(1), lin(2), lin(6), lin(7), P::descending({1, 2, -1})})},
        {"f322_32", product_of({P{-1}, lin(-4), lin(-5), n, lin(1), lin(2), lin(6), lin(7), P::descending({1, 4, 6, 4, 25})})},
        {"f322_3", product_of({lin(-5), lin(-4), n, lin(1), lin(2), lin(6), lin(7),
                               P::descending({5, 35, -14, -420, -445, 625, 2014, 1320})})},

        {"f6_6", P::descending({1, 5, 25, 55, 58, 24})},
        {"f6_42", P::descending({1, 4, 7, 6, -18})},
        {"f6_33", P::descending({3, 12, 7, -10, 72})},
        {"f6_222", P::descending({1, 3, -4, -6})},

        {"f42_6", P::descending({1, 7, 21, 35, 14, -42, -36, 0})},
        {"f42_42", P::descending({1, 8, 28, 56, 169, 452, 762, 684, -2160})},
        {"f42_33", P::descending({1, 6, 5, -20, -20, 16, 96})},
        {"f42_222", P::descending({2, 14, -3, -155, 163, 1221, -162, -1080})},
        {"f42_4", P::descending({1, 11, 14, -204, -747, -189, 3716, 9334, 10696, 6168, 1440, 0})},
        {"f42_22", P::descending({2, 20, 3, -456, -1008, 1680, 7327, 7036, 1236, -720, 0})},
        // the g6 factor of this one is carried by the term's symbol
        {"f42_2", product_of({lin(1), lin(1)})},

        {"f33_6", P::descending({3, 21, 49, 35, 56, 196, 144, 0})},
        {"f33_42", P::descending({1, 6, 5, -20, -20, 16, 96})},
        {"f33_33", P::descending({1, 8, 0, -112, 127, 1404, 580, -2032, -3840})},
        {"f33_222", P::descending({4, 20, -19, -137, 78, 180})},

        {"f222_6", P::descending({1, 6, 7, -12, -26, -12, 0})},
        {"f222_42", P::descending({2, 14, -3, -155, 163, 1221, -162, -1080})},
        {"f222_33", P::descending({4, 20, -19, -137, 78, 180})},
        {"f222_222", P::descending({1, 8, -7, -154, -79, 860, 1777, 1338, -3240})},
        {"f222_4", P::descending({2, 20, 3, -456, -1008, 1680, 7327, 7036, 1236, -720, 0})},
        {"f222_22", P::descending({1, 11, 7, -267, -687, 1407, 5543, 157, -6664, 6252, 9360, 0})},
        {"f222_2", P::descending({5, 70, 186, -1408, -7964, -1320, 65098, 121616, -67617, -437030, -422284, 127992, 432576, 190080, 0})},

        {"f5_5", P::descending({1, 4, 11, 14, 6})},
        {"f5_32", P::descending({1, 3, 1, -1})},

        {"f32_5", P::descending({1, 3, 1, -1})},
        {"f32_32", P::descending({1, 4, 6, 4, 25})},
        {"f32_3", product_of({lin(-3), lin(-2), lin(1), lin(1), lin(1), lin(4), lin(5)})},

        {"f4_4", P::descending({1, 3, 4, 2})},
        {"f4_22", P::descending({2, 4, -1})},

        {"f22_4", P::descending({2, 6, 3, -1})},
        {"f22_22", P::descending({1, 4, 0, -8, 13})},
        {"f22_2", P::descending({1, 7, 8, -30, -59, -1, 50, 24})},
    };
    return t;
  }();
  return tables;
}

}  // namespace detail

/// Transcribed coefficient polynomial by key, e.g. "f52_43".
inline const PolyN& coefficient_polynomial(std::string_view key) {
  for (const auto& t : detail::coefficient_tables())
    if (t.key == key) return t.poly;
  throw DomainError("unknown coefficient polynomial '" + std::string(key) + "'");
}

inline std::vector<std::string> coefficient_polynomial_keys() {
  std::vector<std::string> out;
  for (const auto& t : detail::coefficient_tables()) out.push_back(t.key);
  return out;
}

namespace detail {

inline ThetaTerm theta_term(long coefficient, const std::string& formula, Partition thetas,
                            std::optional<GSymbol> symbol = std::nullopt) {
  const std::string key = "f" + formula + "_" + thetas.compact();
  return {Integer(coefficient), key, coefficient_polynomial(key), symbol, std::move(thetas)};
}

}  // namespace detail

/// The twelve transcribed identities of degrees 4..7, in the order they are
/// usually listed (degree 7 first).
inline const std::vector<FormulaSpec>& builtin_formulas() {
  using detail::lin;
  using detail::product_of;
  using detail::theta_term;
  static const std::vector<FormulaSpec> specs = [] {
    const PolyN n = PolyN::variable();
    const PolyN n_n2 = n * lin(2);
    const PolyN n_n1_n2 = n * lin(1) * lin(2);
    std::vector<FormulaSpec> out;

    out.push_back({Partition{7}, {1, PolyN{1}, GSymbol::g}, {},
                   {theta_term(-720, "7", {7}), theta_term(5040, "7", {5, 2}), theta_term(5040, "7", {4, 3}),
                    theta_term(-10080, "7", {3, 2, 2})}});
    out.push_back({Partition{5, 2}, {1, n_n2, GSymbol::g}, {},
                   {theta_term(5040, "52", {7}), theta_term(-504, "52", {5, 2}), theta_term(-5040, "52", {4, 3}),
                    theta_term(2520, "52", {3, 2, 2}), theta_term(42, "52", {5}), theta_term(-210, "52", {3, 2})}});
    out.push_back({Partition{4, 3}, {12, n_n2, GSymbol::g}, {},
                   {theta_term(60480, "43", {7}), theta_term(-60480, "43", {5, 2}), theta_term(-5040, "43", {4, 3}),
                    theta_term(5040, "43", {3, 2, 2}), theta_term(-7, "43", {3})}});
    out.push_back({Partition{3, 2, 2}, {24, n_n2, GSymbol::g}, {},
                   {theta_term(-241920, "322", {7}), theta_term(60480, "322", {5, 2}), theta_term(10080, "322", {4, 3}),
                    theta_term(-5040, "322", {3, 2, 2}), theta_term(-5040, "322", {5}), theta_term(-840, "322", {3, 2}),
                    theta_term(-7, "322", {3})}});

    out.push_back({Partition{6}, {252, PolyN{1}, GSymbol::g6}, {{1, lin(1), GSymbol::g}},
                   {theta_term(-30240, "6", {6}), theta_term(181440, "6", {4, 2}), theta_term(30240, "6", {3, 3}),
                    theta_term(-211680, "6", {2, 2, 2})}});
    out.push_back({Partition{4, 2}, {672, n_n1_n2, GSymbol::g6}, {{1, n_n1_n2 * PolyN::descending({7, 14, 47}), GSymbol::g6}},
                   {theta_term(483840, "42", {6}), theta_term(-60480, "42", {4, 2}), theta_term(-1209600, "42", {3, 3}),
                    theta_term(60480, "42", {2, 2, 2}), theta_term(5040, "42", {4}), theta_term(-5040, "42", {2, 2}),
                    theta_term(-84, "42", {2}, GSymbol::g6)}});
    out.push_back({Partition{3, 3}, {126, n_n1_n2, GSymbol::g6}, {{-5, n_n1_n2, GSymbol::g6}},
                   {theta_term(15120, "33", {6}), theta_term(-226800, "33", {4, 2}), theta_term(-5040, "33", {3, 3}),
                    theta_term(60480, "33", {2, 2, 2})}});
    out.push_back({Partition{2, 2, 2}, {576, n_n1_n2, GSymbol::g6},
                   {{1, product_of({n, lin(1), lin(1), lin(2), PolyN::descending({5, 10, 23})}), GSymbol::g6}},
                   {theta_term(483840, "222", {6}), theta_term(-51840, "222", {4, 2}), theta_term(-276480, "222", {3, 3}),
                    theta_term(8640, "222", {2, 2, 2}), theta_term(4320, "222", {4}), theta_term(-2160, "222", {2, 2}),
                    theta_term(36, "222", {2})}});

    out.push_back({Partition{5}, {1, PolyN{1}, GSymbol::g5}, {}, {theta_term(-24, "5", {5}), theta_term(120, "5", {3, 2})}});
    out.push_back({Partition{3, 2}, {3, PolyN{1}, GSymbol::g5}, {},
                   {theta_term(360, "32", {5}), theta_term(-60, "32", {3, 2}), theta_term(5, "32", {3})}});

    out.push_back({Partition{4}, {-120, PolyN{1}, GSymbol::g4}, {{1, lin(1), GSymbol::g4}},
                   {theta_term(720, "4", {4}), theta_term(-720, "4", {2, 2})}});
    out.push_back({Partition{2, 2}, {240, lin(1), GSymbol::g4}, {{-1, lin(1), GSymbol::g22}},
                   {theta_term(1440, "22", {4}), theta_term(-720, "22", {2, 2}), theta_term(120, "22", {2})}});
    return out;
  }();
  return specs;
}

inline const FormulaSpec& builtin_formula(const Partition& id) {
  for (const auto& s : builtin_formulas())
    if (s.id == id) return s;
  throw DomainError("no transcribed formula with id " + id.compact());
}

}  // namespace anmult
