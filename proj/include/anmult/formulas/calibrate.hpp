#pragma once

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anmult/exact/matrix.hpp"
#include "anmult/exact/reconstruct.hpp"
#include "anmult/formulas/corpus.hpp"
#include "anmult/formulas/derive.hpp"
#include "anmult/formulas/identity.hpp"

namespace anmult {

struct ResidualWitness {
  OrbitLabel top;
  int rank = 0;
  Rational residual;
};

struct FormulaDiagnosis {
  bool valid = false;
  std::string summary;
  std::optional<ResidualWitness> witness;
  std::optional<std::string> first_failing_term;
  /// fitted / transcribed coefficient of the failing term, or "varies with N"
  std::optional<std::string> failing_ratio;
  std::vector<std::string> hints;
  std::size_t checked_pairs = 0;
};

struct CalibrationProvenance {
  std::string calibration_corpus;
  std::string validation_corpus;
  std::vector<int> ranks;
  std::vector<int> validation_ranks;
  /// validation pairs where some sub-dominant orbit of the top was empty
  std::size_t pairs_with_empty_orbits = 0;
};

struct Calibration {
  std::map<GSymbol, RatFuncN> symbols;
  /// one entry per formula, in the order the formulas were given
  std::vector<std::pair<Partition, FormulaDiagnosis>> status;
  CalibrationProvenance provenance;

  SymbolValues at(int rank) const {
    SymbolValues out;
    for (const auto& [s, f] : symbols)
      if (!f.has_pole(Rational(rank))) out.emplace(s, f(rank));
    return out;
  }

  const FormulaDiagnosis* diagnosis(const Partition& id) const {
    for (const auto& [k, d] : status)
      if (k == id) return &d;
    return nullptr;
  }

  bool is_valid(const Partition& id) const {
    const auto* d = diagnosis(id);
    return d && d->valid;
  }

  std::vector<Partition> valid_ids() const {
    std::vector<Partition> out;
    for (const auto& [k, d] : status)
      if (d.valid) out.push_back(k);
    return out;
  }
};

inline MultiplicityIdentity identity_of(const FormulaSpec& spec, const Calibration& cal) {
  return {spec.id.compact(), spec.id, [spec, symbols = cal.symbols](const OrbitLabel& top, int rank) -> std::optional<IdentityWeights> {
            SymbolValues values;
            for (const auto& [s, f] : symbols) {
              if (f.has_pole(Rational(rank))) continue;
              values.emplace(s, f(rank));
            }
            return spec_weights(spec, ThetaData::of(top, rank, spec.id.weight()), values);
          }};
}

struct ValidationReport {
  bool valid = true;
  std::size_t checked = 0;
  std::optional<ResidualWitness> first_failure;
  std::vector<ResidualWitness> residuals;  // every checked pair, in order
};

/// Residual of the identity on every (entry, rank) pair with rank > sigma.
/// Valid iff all residuals are exactly zero; an empty check is not valid.
inline ValidationReport validate_formula(const MultiplicityIdentity& identity, const Corpus& corpus, const std::vector<int>& ranks) {
  ValidationReport report;
  for (const auto& e : corpus)
    for (int n : ranks) {
      if (static_cast<int>(e.top.size()) >= n) continue;
      const auto r = phi_residual(identity, e.table, n);
      if (!r) continue;
      ++report.checked;
      report.residuals.push_back({e.top, n, *r});
      if (*r != 0 && !report.first_failure) {
        report.first_failure = report.residuals.back();
        report.valid = false;
      }
    }
  if (report.checked == 0) report.valid = false;
  return report;
}

struct CalibrateOptions {
  std::vector<int> ranks;             // empty: 2..24
  std::vector<int> validation_ranks;  // empty: 2..12
  std::size_t check_count = 3;
  bool localize = true;
};

namespace detail {

enum class SolveOutcome { unique, underdetermined, inconsistent };

struct PerRankSolve {
  SolveOutcome outcome = SolveOutcome::underdetermined;
  SymbolValues values;
};

struct RepAtRank {
  const CorpusEntry* entry;
  ThetaData theta;
  Integer dim;
};

inline PerRankSolve solve_symbols(const FormulaSpec& spec, const std::vector<RepAtRank>& reps) {
  const auto symbols = spec.symbols();
  ExactMatrix a(0, symbols.size());
  std::vector<Rational> b;
  std::vector<Rational> row(symbols.size());
  for (const auto& r : reps) {
    const auto lin = phi_linear(spec, rep_cof(r.entry->table, spec.id, r.theta.rank), r.dim, r.theta);
    for (std::size_t j = 0; j < symbols.size(); ++j) {
      auto it = lin.coefficients.find(symbols[j]);
      row[j] = it == lin.coefficients.end() ? Rational(0) : it->second;
    }
    a.append_row(row);
    b.push_back(-lin.constant);
  }
  PerRankSolve out;
  const auto analysis = analyze_linear_system(a, b);
  if (!analysis.consistent) {
    out.outcome = SolveOutcome::inconsistent;
  } else if (analysis.solution) {
    out.outcome = SolveOutcome::unique;
    for (std::size_t j = 0; j < symbols.size(); ++j) out.values.emplace(symbols[j], (*analysis.solution)[j]);
  }
  return out;
}

inline std::string ratio_text(const std::vector<Rational>& ratios) {
  if (ratios.empty()) return "unknown";
  for (const auto& r : ratios)
    if (r != ratios.front()) return "varies with N";
  return to_string(ratios.front());
}

/// Compares each transcribed term with the identity fitted from data at a few
/// ranks, taking the cof factor as reference.
inline void localize_terms(const FormulaSpec& spec, const Calibration& cal, const Corpus& fit_corpus, FormulaDiagnosis& diag) {
  const auto basis = ansatz_basis(spec.id);
  struct Probe {
    int rank;
    std::map<Partition, Rational> fitted;
    SymbolValues symbols;
  };
  std::vector<Probe> probes;
  for (int n = spec.id.weight() + 1; n <= spec.id.weight() + 12 && probes.size() < 3; ++n) {
    auto fit = fit_at_rank(spec.id, basis, fit_corpus, n);
    if (fit.outcome != FitOutcome::unique) continue;
    probes.push_back({n, std::move(fit.coefficients), cal.at(n)});
  }
  if (probes.empty()) return;

  struct TermView {
    std::string text;
    Partition monomial;
    std::function<std::optional<Rational>(const Probe&)> value;
  };
  std::vector<TermView> terms;
  for (const auto& d : spec.dim_terms)
    terms.push_back({d.describe() + " (dimension term)", Partition{}, [d](const Probe& p) { return factor_value(d, p.symbols, p.rank); }});
  for (const auto& t : spec.theta_terms)
    terms.push_back({t.describe(), t.thetas, [t](const Probe& p) -> std::optional<Rational> {
                       Rational v = Rational(t.coefficient) * t.f(p.rank);
                       if (t.symbol) {
                         auto it = p.symbols.find(*t.symbol);
                         if (it == p.symbols.end()) return std::nullopt;
                         v *= it->second;
                       }
                       return v;
                     }});

  for (const auto& term : terms) {
    std::vector<Rational> ratios;
    bool failing = false;
    for (const auto& p : probes) {
      const auto a = factor_value(spec.cof_factor, p.symbols, p.rank);
      const auto v = term.value(p);
      if (!a || !v || *a == 0) continue;
      const Rational implied = -*v / *a;
      const Rational fitted = p.fitted.count(term.monomial) ? p.fitted.at(term.monomial) : Rational(0);
      if (implied == 0) {
        if (fitted != 0) failing = true;
        continue;
      }
      ratios.push_back(fitted / implied);
      if (fitted != implied) failing = true;
    }
    if (failing) {
      diag.first_failing_term = term.text;
      diag.failing_ratio = ratio_text(ratios);
      return;
    }
  }
  for (const auto& q : basis) {
    bool present = false;
    for (const auto& t : terms) present = present || t.monomial == q;
    if (present) continue;
    for (const auto& p : probes)
      if (p.fitted.count(q) && p.fitted.at(q) != 0) {
        std::string text = "missing term on ";
        if (q.empty()) text += "the dimension";
        for (int d : q.parts()) text += "Theta(" + std::to_string(d) + ")";
        diag.first_failing_term = text;
        return;
      }
  }
}

}  // namespace detail

/// Fits the undetermined factors from Phi = 0 on a verified corpus, rank by
/// rank, classifies each formula and validates the survivors on a disjoint corpus.
inline Calibration calibrate(const std::vector<FormulaSpec>& specs, const Corpus& corpus, const Corpus& validation_corpus,
                             const CalibrateOptions& options = {}) {
  if (corpus.empty()) throw DomainError("calibration corpus is empty");
  if (specs.empty()) throw DomainError("no formulas to calibrate");
  std::vector<int> ranks = options.ranks;
  if (ranks.empty())
    for (int n = 2; n <= 24; ++n) ranks.push_back(n);
  std::vector<int> vranks = options.validation_ranks;
  if (vranks.empty())
    for (int n = 2; n <= 12; ++n) vranks.push_back(n);

  int max_degree = 1;
  for (const auto& s : specs) max_degree = std::max(max_degree, s.id.weight());

  // per rank, per formula: the formula's own symbols fitted in isolation
  std::vector<std::future<std::vector<detail::PerRankSolve>>> jobs;
  for (int n : ranks)
    jobs.push_back(std::async(std::launch::async, [&, n] {
      std::vector<detail::RepAtRank> reps;
      for (const auto* e : usable_at(corpus, n))
        reps.push_back({e, ThetaData::of(e->top, n, max_degree), weyl_dimension(to_dynkin(e->top, n))});
      std::vector<detail::PerRankSolve> out;
      for (const auto& spec : specs) out.push_back(detail::solve_symbols(spec, reps));
      return out;
    }));
  std::vector<std::vector<detail::PerRankSolve>> solves;
  for (auto& j : jobs) solves.push_back(j.get());

  Calibration cal;
  cal.provenance.ranks = ranks;
  cal.provenance.validation_ranks = vranks;
  std::vector<FormulaDiagnosis> diags(specs.size());
  std::vector<bool> suspect(specs.size(), false);

  for (std::size_t i = 0; i < specs.size(); ++i)
    for (std::size_t k = 0; k < ranks.size(); ++k)
      if (solves[k][i].outcome == detail::SolveOutcome::inconsistent && !suspect[i]) {
        suspect[i] = true;
        diags[i].summary = "no consistent values of its own symbols at N=" + std::to_string(ranks[k]);
      }

  // majority vote per symbol and rank; ties go to the formula listed first
  std::map<GSymbol, std::vector<SamplePoint>> points;
  for (std::size_t k = 0; k < ranks.size(); ++k) {
    for (GSymbol sym : all_symbols) {
      std::vector<std::pair<Rational, std::vector<std::size_t>>> groups;
      for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto& s = solves[k][i];
        if (s.outcome != detail::SolveOutcome::unique || !s.values.count(sym)) continue;
        const Rational& v = s.values.at(sym);
        auto g = std::find_if(groups.begin(), groups.end(), [&](const auto& grp) { return grp.first == v; });
        if (g == groups.end()) groups.push_back({v, {i}});
        else g->second.push_back(i);
      }
      if (groups.empty()) continue;
      const auto winner = std::max_element(groups.begin(), groups.end(), [](const auto& a, const auto& b) {
        if (a.second.size() != b.second.size()) return a.second.size() < b.second.size();
        return a.second.front() > b.second.front();
      });
      points[sym].emplace_back(ranks[k], winner->first);
      for (const auto& g : groups) {
        if (&g == &*winner) continue;
        for (std::size_t i : g.second)
          if (!suspect[i]) {
            suspect[i] = true;
            diags[i].summary = "its value of " + std::string(symbol_name(sym)) + " disagrees with the shared one at N=" + std::to_string(ranks[k]);
          }
      }
    }
  }

  for (const auto& [sym, pts] : points) {
    auto f = detail::reconstruct_coefficient(pts, options.check_count);
    if (!f) throw DomainError("insufficient ranks for reconstruction of " + std::string(symbol_name(sym)));
    cal.symbols.emplace(sym, std::move(*f));
  }

  // symbol-level hints: what a suspect formula's own fit of each symbol looks like
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (!suspect[i]) continue;
    for (GSymbol x : specs[i].symbols()) {
      for (GSymbol y : all_symbols) {
        if (!cal.symbols.count(y)) continue;
        std::optional<Rational> ratio;
        bool consistent = true, seen = false, differs_from_own = false;
        for (std::size_t k = 0; k < ranks.size() && consistent; ++k) {
          const auto& s = solves[k][i];
          if (s.outcome != detail::SolveOutcome::unique) continue;
          const Rational own = s.values.at(x);
          if (cal.symbols.count(x) && !cal.symbols.at(x).has_pole(Rational(ranks[k])) && cal.symbols.at(x)(ranks[k]) != own)
            differs_from_own = true;
          if (cal.symbols.at(y).has_pole(Rational(ranks[k]))) continue;
          const Rational yv = cal.symbols.at(y)(ranks[k]);
          if (yv == 0) {
            if (own != 0) consistent = false;
            continue;
          }
          const Rational r = own / yv;
          if (ratio && *ratio != r) consistent = false;
          ratio = r;
          seen = true;
        }
        if (!seen || !consistent || !differs_from_own) continue;
        std::string as = *ratio == 1 ? std::string(symbol_name(y)) : *ratio == -1 ? "-" + std::string(symbol_name(y))
                                                                                  : to_string(*ratio) + "*" + std::string(symbol_name(y));
        diags[i].hints.push_back(std::string(symbol_name(x)) + " in this formula fits as " + as);
      }
    }
  }

  // exact validation on the disjoint corpus, also recording the empty-orbit regime
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto identity = identity_of(specs[i], cal);
    const auto report = validate_formula(identity, validation_corpus, vranks);
    diags[i].checked_pairs = report.checked;
    if (report.first_failure) diags[i].witness = report.first_failure;
    if (!suspect[i]) {
      if (report.checked == 0) {
        suspect[i] = true;
        diags[i].summary = "no validation pairs";
      } else if (!report.valid) {
        suspect[i] = true;
        diags[i].summary = "nonzero residual on the validation corpus";
      }
    }
    if (!suspect[i] && i == 0)
      for (const auto& r : report.residuals) {
        const auto& top = r.top;
        bool empty = false;
        for (const auto& label : sub_dominants(top)) empty = empty || static_cast<int>(label.size()) > r.rank + 1;
        if (empty) ++cal.provenance.pairs_with_empty_orbits;
      }
  }

  Corpus fit_corpus;
  if (options.localize && std::find(suspect.begin(), suspect.end(), true) != suspect.end()) fit_corpus = default_fit_corpus();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    diags[i].valid = !suspect[i];
    if (diags[i].valid) diags[i].summary = "valid";
    else if (options.localize) detail::localize_terms(specs[i], cal, fit_corpus, diags[i]);
    cal.status.emplace_back(specs[i].id, std::move(diags[i]));
  }
  return cal;
}

/// Height <= 4 for fitting, heights 5..6 for validation.
inline Calibration calibrate_builtin(int calibration_height = 4, int validation_height = 6, CalibrateOptions options = {}) {
  const Corpus corpus = corpus_of_heights(1, calibration_height);
  const Corpus validation = corpus_of_heights(calibration_height + 1, validation_height);
  Calibration cal = calibrate(builtin_formulas(), corpus, validation, options);
  cal.provenance.calibration_corpus = "Freudenthal tables, all tops of " + describe_heights(1, calibration_height);
  cal.provenance.validation_corpus = "Freudenthal tables, all tops of " + describe_heights(calibration_height + 1, validation_height);
  return cal;
}

}  // namespace anmult
