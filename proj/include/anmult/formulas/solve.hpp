#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "anmult/exact/matrix.hpp"
#include "anmult/formulas/calibrate.hpp"
#include "anmult/formulas/identity.hpp"
#include "anmult/freudenthal.hpp"

namespace anmult {

struct LinearSystem {
  std::vector<OrbitLabel> unknowns;
  ExactMatrix matrix{0, 0};
  std::vector<Rational> rhs;
  /// (identity name, rank) per row
  std::vector<std::pair<std::string, int>> rows;
  /// ranks at which no identity produced a row
  std::vector<int> skipped_ranks;
};

inline std::vector<OrbitLabel> solve_unknowns(const OrbitLabel& top) {
  std::vector<OrbitLabel> out;
  for (const auto& q : sub_dominants(top))
    if (q != top) out.push_back(q);
  return out;
}

namespace detail {

/// cof and orbit size of one orbit, zero when it does not fit in N+1 slots
inline std::pair<Rational, Integer> orbit_row_data(const OrbitLabel& q, const Partition& id, int rank) {
  if (static_cast<int>(q.size()) > rank + 1) return {Rational(0), Integer(0)};
  return {cof(q, id, rank), orbit_dimension(q, rank)};
}

inline bool append_rows(LinearSystem& sys, const OrbitLabel& top, const std::vector<MultiplicityIdentity>& identities, int rank) {
  bool any = false;
  std::vector<Rational> row(sys.unknowns.size());
  for (const auto& identity : identities) {
    const auto w = identity.weights(top, rank);
    if (!w) continue;
    any = true;
    for (std::size_t j = 0; j < sys.unknowns.size(); ++j) {
      const auto [c, d] = orbit_row_data(sys.unknowns[j], identity.id, rank);
      row[j] = c * w->cof_weight + Rational(d) * w->dim_weight;
    }
    const auto [c, d] = orbit_row_data(top, identity.id, rank);
    sys.matrix.append_row(row);
    sys.rhs.push_back(-(c * w->cof_weight + Rational(d) * w->dim_weight));
    sys.rows.emplace_back(identity.name, rank);
  }
  if (!any) sys.skipped_ranks.push_back(rank);
  return any;
}

}  // namespace detail

/// One row per (identity, rank); m(top) = 1 is moved to the right-hand side.
inline LinearSystem assemble_system(const OrbitLabel& top, const std::vector<MultiplicityIdentity>& identities, const std::vector<int>& ranks) {
  LinearSystem sys;
  sys.unknowns = solve_unknowns(top);
  sys.matrix = ExactMatrix(0, sys.unknowns.size());
  for (int n : ranks) {
    if (n <= static_cast<int>(top.size())) throw DomainError("rank " + std::to_string(n) + " must exceed the number of parts of " + top.to_string());
    detail::append_rows(sys, top, identities, n);
  }
  return sys;
}

struct SolveReport {
  OrbitLabel top;
  std::vector<int> ranks;
  std::vector<std::string> formulas;
  std::size_t unknowns = 0;
  std::size_t rows = 0;
  std::size_t rank = 0;
  std::size_t nullity = 0;
  std::optional<MultiplicityTable> solution;
  std::optional<bool> oracle_agrees;
  int oracle_rank = 0;
  std::vector<std::string> warnings;
};

struct SolveOptions {
  std::vector<int> ranks;  // empty: sigma+1 .. sigma+u+2
  bool cross_check = false;
};

/// Solves Phi = 0 for the sub-dominant multiplicities of `top`. Ranks where no
/// identity is defined (poles) do not count towards the rank budget.
inline SolveReport solve_multiplicities(const OrbitLabel& top, const std::vector<MultiplicityIdentity>& identities, const SolveOptions& options = {}) {
  if (top.empty()) throw DomainError("empty top label");
  SolveReport report;
  report.top = top;
  for (const auto& i : identities) report.formulas.push_back(i.name);

  const int sigma = static_cast<int>(top.size());
  auto unknowns = solve_unknowns(top);
  const int u = static_cast<int>(unknowns.size());
  report.unknowns = unknowns.size();

  if (u == 0) {
    report.solution = MultiplicityTable::for_top(top);
    if (!options.ranks.empty()) report.ranks = options.ranks;
  } else {
    if (identities.empty()) throw DomainError("no formulas to solve with");
    LinearSystem sys = assemble_system(top, identities, options.ranks);
    std::size_t effective = options.ranks.size() - sys.skipped_ranks.size();
    int next = options.ranks.empty() ? sigma + 1 : *std::max_element(options.ranks.begin(), options.ranks.end()) + 1;
    const std::size_t target = options.ranks.empty() ? static_cast<std::size_t>(u + 2) : effective;
    const std::size_t budget = static_cast<std::size_t>(u + 5);
    const int hard_stop = next + 200;
    report.ranks = options.ranks;

    auto extend_once = [&] {
      while (next < hard_stop) {
        const int n = next++;
        report.ranks.push_back(n);
        if (detail::append_rows(sys, top, identities, n)) {
          ++effective;
          return true;
        }
      }
      return false;
    };
    while (effective < target && extend_once()) {
    }

    LinearAnalysis analysis = analyze_linear_system(sys.matrix, sys.rhs);
    while (analysis.consistent && !analysis.solution && effective < budget && extend_once())
      analysis = analyze_linear_system(sys.matrix, sys.rhs);

    report.rows = sys.rows.size();
    report.rank = analysis.rank;
    report.nullity = analysis.nullity;
    for (int n : sys.skipped_ranks) report.warnings.push_back("no formula defined at N=" + std::to_string(n) + ", rank skipped");
    for (int n : report.ranks)
      for (const auto& q : unknowns)
        if (static_cast<int>(q.size()) > n + 1)
          report.warnings.push_back("orbit " + q.to_string() + " is empty at N=" + std::to_string(n));

    if (sys.rows.empty()) throw LinearSystemError(LinearSystemError::Kind::underdetermined, 0, unknowns.size());
    if (!analysis.consistent) throw ValidationError("inconsistent system for " + top.to_string() + ": a formula does not hold on this representation");
    if (!analysis.solution)
      throw LinearSystemError(LinearSystemError::Kind::underdetermined, analysis.rank, analysis.nullity);

    MultiplicityTable table = MultiplicityTable::for_top(top);
    for (std::size_t j = 0; j < unknowns.size(); ++j) {
      const Rational& m = (*analysis.solution)[j];
      if (m.get_den() != 1) throw ValidationError("non-integral multiplicity " + to_string(m) + " for " + unknowns[j].to_string());
      if (m < 0) throw ValidationError("negative multiplicity " + to_string(m) + " for " + unknowns[j].to_string());
      table.set(unknowns[j], m.get_num());
    }
    report.solution = std::move(table);
  }

  if (options.cross_check) {
    // smallest rank where every sub-dominant orbit is nonempty
    const int n = std::max({sigma, top.weight() - 1, 1});
    report.oracle_rank = n;
    report.oracle_agrees = freudenthal(to_dynkin(top, n)) == *report.solution;
  }
  return report;
}

/// Identities for the formulas calibration found valid; the others are reported
/// and skipped.
inline std::vector<MultiplicityIdentity> valid_identities(const std::vector<FormulaSpec>& specs, const Calibration& cal,
                                                          std::vector<std::string>* warnings = nullptr) {
  std::vector<MultiplicityIdentity> out;
  for (const auto& spec : specs) {
    if (cal.is_valid(spec.id)) out.push_back(identity_of(spec, cal));
    else if (warnings) warnings->push_back("formula " + spec.id.compact() + " is suspect, skipped");
  }
  return out;
}

}  // namespace anmult
