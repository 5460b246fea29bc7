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
#include "anmult/formulas/identity.hpp"

namespace anmult {

/// Theta monomials allowed in an identity for `id`: no-1 partitions of degree
/// at most |id| with the same parity, plus the constant when |id| is even.
/// Highest degree first, gradation-descending within a degree.
inline std::vector<Partition> ansatz_basis(const Partition& id) {
  const int s = id.weight();
  std::vector<Partition> out;
  for (int d = s; d >= 2; d -= 2) {
    auto level = no_one_partitions(d);
    out.insert(out.end(), level.rbegin(), level.rend());
  }
  if (s % 2 == 0) out.emplace_back();
  return out;
}

/// Heights 1..5 plus every other height-7 top: enough independent
/// representations to pin down degree-8 identities from rank 7 on.
inline Corpus default_fit_corpus() {
  Corpus out = corpus_of_heights(1, 5);
  const auto seven = corpus_of_height(7);
  for (std::size_t i = 0; i < seven.size(); i += 2) out.push_back(seven[i]);
  return out;
}

/// The height-7 tops left out of default_fit_corpus().
inline Corpus default_holdout_corpus() {
  Corpus out;
  const auto seven = corpus_of_height(7);
  for (std::size_t i = 1; i < seven.size(); i += 2) out.push_back(seven[i]);
  return out;
}

enum class FitOutcome { unique, underdetermined, inconsistent };

struct RankFit {
  FitOutcome outcome = FitOutcome::underdetermined;
  std::map<Partition, Rational> coefficients;
};

/// Exact least-structure fit at one rank: rep_cof/dim as a combination of the
/// basis monomials over every usable corpus entry.
inline RankFit fit_at_rank(const Partition& id, const std::vector<Partition>& basis, const Corpus& corpus, int rank) {
  const auto reps = usable_at(corpus, rank);
  ExactMatrix a(0, basis.size());
  std::vector<Rational> b;
  std::vector<Rational> row(basis.size());
  for (const auto* e : reps) {
    const auto theta = ThetaData::of(e->top, rank, id.weight());
    for (std::size_t j = 0; j < basis.size(); ++j) row[j] = theta.product(basis[j]);
    a.append_row(row);
    b.push_back(rep_cof(e->table, id, rank) / Rational(rep_dimension(e->table, rank)));
  }
  const auto analysis = analyze_linear_system(a, b);
  RankFit fit;
  if (!analysis.consistent) {
    fit.outcome = FitOutcome::inconsistent;
  } else if (analysis.solution) {
    fit.outcome = FitOutcome::unique;
    for (std::size_t j = 0; j < basis.size(); ++j) fit.coefficients.emplace(basis[j], (*analysis.solution)[j]);
  }
  return fit;
}

struct DeriveOptions {
  int first_rank = 0;    // 0: |id| - 1
  int max_rank = 0;      // 0: first_rank + 80
  std::size_t check_count = 3;
  int extra_validation_ranks = 3;
  std::size_t batch = 8;  // ranks fitted concurrently
};

namespace detail {

inline std::optional<RatFuncN> reconstruct_coefficient(const std::vector<SamplePoint>& points, std::size_t check) {
  if (auto p = stable_poly_interpolate(points, check)) return RatFuncN(*p);
  return reconstruct_rational(points, check);
}

}  // namespace detail

/// Fits the identity rank by rank, reconstructs every coefficient as a rational
/// function of N and validates it exactly on the held-out corpus. Never
/// returns an unvalidated formula.
inline DerivedFormula derive_formula(const Partition& id, const Corpus& fit_corpus, const Corpus& holdout,
                                     const DeriveOptions& options = {}) {
  if (id.weight() < 4) throw DomainError("derived identities need degree at least 4");
  if (id.contains_one()) throw DomainError("coefficient not physical: index " + id.to_string() + " contains a part 1");
  const auto basis = ansatz_basis(id);
  if (fit_corpus.size() <= basis.size()) throw DomainError("fit corpus must be larger than the ansatz basis");

  const int first = options.first_rank > 0 ? options.first_rank : std::max(2, id.weight() - 1);
  const int last = options.max_rank > 0 ? options.max_rank : first + 80;

  std::map<Partition, std::vector<SamplePoint>> samples;
  std::vector<int> fit_ranks;
  std::size_t inconsistent = 0, attempted = 0;
  std::map<Partition, RatFuncN> result;

  for (int start = first; start <= last && result.empty(); start += static_cast<int>(options.batch)) {
    std::vector<std::pair<int, std::future<RankFit>>> jobs;
    for (int n = start; n < start + static_cast<int>(options.batch) && n <= last; ++n)
      jobs.emplace_back(n, std::async(std::launch::async, [&, n] { return fit_at_rank(id, basis, fit_corpus, n); }));
    for (auto& [n, job] : jobs) {
      const RankFit fit = job.get();
      ++attempted;
      if (fit.outcome == FitOutcome::inconsistent) ++inconsistent;
      if (fit.outcome != FitOutcome::unique) continue;
      fit_ranks.push_back(n);
      for (const auto& [q, c] : fit.coefficients) samples[q].emplace_back(n, c);
    }
    if (fit_ranks.size() <= options.check_count + 1) continue;

    std::map<Partition, RatFuncN> trial;
    for (const auto& q : basis) {
      auto f = detail::reconstruct_coefficient(samples[q], options.check_count);
      if (!f) break;
      trial.emplace(q, std::move(*f));
    }
    if (trial.size() == basis.size()) result = std::move(trial);
  }

  if (fit_ranks.empty()) {
    if (inconsistent == attempted) throw DomainError("ansatz inconsistent: no identity of this shape exists for " + id.compact());
    throw DomainError("corpus too small for a full-rank fit of " + id.compact());
  }
  if (result.empty()) throw ValidationError("reconstruction failed for " + id.compact() + " up to rank " + std::to_string(last));

  DerivedFormula formula;
  formula.id = id;
  formula.fit_ranks = fit_ranks;
  formula.min_rank = fit_ranks.front();
  for (auto& [q, c] : result)
    if (!c.is_zero()) formula.coefficients.emplace(q, std::move(c));

  // held-out tops at every fitted rank, every entry at a few unseen ranks
  std::vector<std::pair<const Corpus*, int>> checks;
  for (int n : fit_ranks) checks.emplace_back(&holdout, n);
  for (int k = 1; k <= options.extra_validation_ranks; ++k) {
    checks.emplace_back(&holdout, fit_ranks.back() + k);
    checks.emplace_back(&fit_corpus, fit_ranks.back() + k);
  }
  const auto identity = identity_of(formula);
  for (const auto& [corpus, n] : checks) {
    if (formula.has_pole(n)) continue;
    if (std::find(formula.validation_ranks.begin(), formula.validation_ranks.end(), n) == formula.validation_ranks.end())
      formula.validation_ranks.push_back(n);
    for (const auto* e : usable_at(*corpus, n)) {
      const auto r = phi_residual(identity, e->table, n);
      if (r && *r != 0)
        throw ValidationError("validation failed for " + id.compact() + " on " + e->top.to_string() + " at N=" + std::to_string(n) +
                              ": residual " + to_string(*r));
      ++formula.validated_pairs;
    }
  }
  if (formula.validated_pairs == 0) throw ValidationError("validation failed for " + id.compact() + ": nothing held out");
  return formula;
}

}  // namespace anmult
