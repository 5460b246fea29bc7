#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "anmult/exact/rational.hpp"
#include "anmult/partitions.hpp"
#include "anmult/weights.hpp"

namespace anmult {

/// Weight multiplicities of the irreducible representation with highest weight d,
/// by the Freudenthal recursion
///   (|L+rho|^2 - |l+rho|^2) m(l) = 2 sum_{alpha>0} sum_{t>=1} m(l + t alpha) <l + t alpha, alpha>
/// with positive roots e_i - e_j (i < j). Weights are kept as nonnegative integer
/// (N+1)-vectors summing to the height; shifting by a multiple of (1,...,1) does
/// not change any of the inner products involved, and the Weyl group acts by
/// permutations, so multiplicities are stored once per orbit label.
inline MultiplicityTable freudenthal(const DynkinLabels& d, std::uint64_t guard = 10000000) {
  if (weyl_dimension(d) > Integer(static_cast<unsigned long>(guard)))
    throw DomainError("representation too large for the Freudenthal guard");

  const int slots = d.rank() + 1;
  const OrbitLabel top = to_orbit_label(d);
  auto padded = [slots](const OrbitLabel& q) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(slots), 0);
    for (std::size_t i = 0; i < q.size(); ++i) v[i] = q[i];
    return v;
  };
  auto shifted_norm = [slots](const std::vector<std::int64_t>& v) {
    std::int64_t acc = 0;
    for (int i = 0; i < slots; ++i) {
      const std::int64_t x = v[static_cast<std::size_t>(i)] + (slots - 1 - i);
      acc += x * x;
    }
    return acc;
  };

  MultiplicityTable table = MultiplicityTable::for_top(top);
  const std::int64_t top_norm = shifted_norm(padded(top));

  std::vector<OrbitLabel> labels;
  for (auto& p : sub_dominants(top))
    if (static_cast<int>(p.size()) <= slots) labels.push_back(std::move(p));

  // descending grade: everything a label depends on is strictly higher
  for (auto it = labels.rbegin(); it != labels.rend(); ++it) {
    const OrbitLabel& label = *it;
    if (label == top) continue;
    const auto lambda = padded(label);
    Integer sum(0);
    std::vector<std::int64_t> w(lambda);
    std::vector<int> sorted(static_cast<std::size_t>(slots));
    for (int i = 0; i < slots; ++i) {
      for (int j = i + 1; j < slots; ++j) {
        for (std::int64_t t = 1; lambda[static_cast<std::size_t>(j)] - t >= 0; ++t) {
          w = lambda;
          w[static_cast<std::size_t>(i)] += t;
          w[static_cast<std::size_t>(j)] -= t;
          for (int k = 0; k < slots; ++k) sorted[static_cast<std::size_t>(k)] = static_cast<int>(w[static_cast<std::size_t>(k)]);
          std::sort(sorted.begin(), sorted.end(), std::greater<>());
          while (!sorted.empty() && sorted.back() == 0) sorted.pop_back();
          const auto key = OrbitLabel(std::vector<int>(sorted));
          sorted.resize(static_cast<std::size_t>(slots));
          const Integer m = table.get(key);
          if (m != 0) sum += m * (w[static_cast<std::size_t>(i)] - w[static_cast<std::size_t>(j)]);
        }
      }
    }
    const std::int64_t gap = top_norm - shifted_norm(lambda);
    if (gap <= 0) throw ValidationError("Freudenthal denominator is not positive for " + label.to_string());
    Integer numer = 2 * sum;
    if (numer % gap != 0) throw ValidationError("Freudenthal recursion produced a non-integral multiplicity");
    table.set(label, numer / gap);
  }
  return table;
}

/// Multiplicity-weighted orbit sizes equal the Weyl dimension.
inline bool check_dimension(const MultiplicityTable& t, int rank) {
  if (t.empty()) return false;
  if (static_cast<int>(t.top().size()) > rank) return false;
  return rep_dimension(t, rank) == weyl_dimension(to_dynkin(t.top(), rank));
}

/// Multiplicities of one top label across several ranks.
struct StabilityReport {
  OrbitLabel top;
  std::vector<int> ranks;
  /// label -> multiplicity at each rank (in `ranks` order) for labels that fit at every rank
  std::map<OrbitLabel, std::vector<Integer>> values;
  bool stable = true;
};

inline StabilityReport stability_report(const OrbitLabel& q, std::span<const int> ranks) {
  StabilityReport report;
  report.top = q;
  report.ranks.assign(ranks.begin(), ranks.end());
  std::vector<MultiplicityTable> tables;
  for (int n : ranks) {
    if (static_cast<int>(q.size()) > n) throw DomainError("rank too small: label " + q.to_string() + " at rank " + std::to_string(n));
    tables.push_back(freudenthal(to_dynkin(q, n)));
  }
  const int min_slots = ranks.empty() ? 0 : *std::min_element(ranks.begin(), ranks.end()) + 1;
  for (const auto& label : sub_dominants(q)) {
    if (static_cast<int>(label.size()) > min_slots) continue;
    std::vector<Integer> row;
    for (const auto& t : tables) row.push_back(t.get(label));
    if (std::adjacent_find(row.begin(), row.end(), std::not_equal_to<>()) != row.end()) report.stable = false;
    report.values.emplace(label, std::move(row));
  }
  return report;
}

/// Table of q at the smallest rank where every sub-dominant orbit is nonempty.
/// Multiplicities are rank-independent there (see stability_report), so this is
/// what corpus builders reuse at other ranks.
inline MultiplicityTable stable_multiplicities(const OrbitLabel& q, std::uint64_t guard = 10000000) {
  const int rank = std::max<int>({1, static_cast<int>(q.size()), height(q) - 1});
  return freudenthal(to_dynkin(q, rank), guard);
}

/// Restriction of a table to the orbits that exist at `rank`.
inline MultiplicityTable at_rank(const MultiplicityTable& t, int rank) {
  MultiplicityTable out = MultiplicityTable::for_top(t.top());
  for (const auto& [label, m] : t.entries())
    if (static_cast<int>(label.size()) <= rank + 1) out.set(label, m);
  return out;
}

}  // namespace anmult
