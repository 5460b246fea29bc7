#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "anmult/exact/rational.hpp"
#include "anmult/partitions.hpp"

namespace anmult {

/// Orbit label of a dominant A_N weight: the weight is sum_i q_i mu_i with the
/// q_i weakly decreasing and positive. Labels carry no rank; the zero weight is
/// the empty label.
using OrbitLabel = Partition;

inline int height(const OrbitLabel& q) { return q.weight(); }

/// Dynkin labels r_1..r_N of a dominant weight of A_N (rank = length).
class DynkinLabels {
 public:
  DynkinLabels(int rank, std::vector<int> r) : rank_(rank), r_(std::move(r)) {
    if (rank_ < 1) throw DomainError("rank must be at least 1");
    if (static_cast<int>(r_.size()) != rank_) throw DomainError("expected " + std::to_string(rank_) + " Dynkin labels");
    for (int v : r_)
      if (v < 0) throw DomainError("Dynkin labels must be nonnegative");
  }
  explicit DynkinLabels(const std::vector<int>& r) : DynkinLabels(static_cast<int>(r.size()), r) {}

  /// lambda_k of A_rank.
  static DynkinLabels fundamental(int rank, int k) {
    if (k < 1 || k > rank) throw DomainError("fundamental weight index out of range");
    std::vector<int> r(static_cast<std::size_t>(rank), 0);
    r[static_cast<std::size_t>(k - 1)] = 1;
    return {rank, std::move(r)};
  }

  int rank() const { return rank_; }
  const std::vector<int>& labels() const { return r_; }
  int operator[](std::size_t i) const { return r_[i]; }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < r_.size(); ++i) out += (i ? "," : "") + std::to_string(r_[i]);
    return out;
  }

  friend bool operator==(const DynkinLabels&, const DynkinLabels&) = default;

 private:
  int rank_;
  std::vector<int> r_;
};

/// q_j = r_j + r_{j+1} + ... + r_N, truncated after the last nonzero entry.
inline OrbitLabel to_orbit_label(const DynkinLabels& d) {
  std::vector<int> q(static_cast<std::size_t>(d.rank()));
  int acc = 0;
  for (int j = d.rank(); j-- > 0;) {
    acc += d[static_cast<std::size_t>(j)];
    q[static_cast<std::size_t>(j)] = acc;
  }
  while (!q.empty() && q.back() == 0) q.pop_back();
  return OrbitLabel(std::move(q));
}

inline DynkinLabels to_dynkin(const OrbitLabel& q, int rank) {
  if (rank < 1) throw DomainError("rank must be at least 1");
  if (static_cast<int>(q.size()) > rank)
    throw DomainError("rank too small: label " + q.to_string() + " needs rank >= " + std::to_string(q.size()));
  std::vector<int> r(static_cast<std::size_t>(rank));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = q.part_or_zero(i) - q.part_or_zero(i + 1);
  return {rank, std::move(r)};
}

/// Coordinates of Lambda + rho in the (N+1)-dimensional sum-zero hyperplane.
class ThetaVector {
 public:
  ThetaVector(int rank, std::vector<Rational> theta) : rank_(rank), theta_(std::move(theta)) {}
  int rank() const { return rank_; }
  const std::vector<Rational>& values() const { return theta_; }
  const Rational& operator[](std::size_t i) const { return theta_[i]; }

 private:
  int rank_;
  std::vector<Rational> theta_;
};

/// theta_i - theta_{i+1} = 1 + r_i and sum_I theta_I = 0.
inline ThetaVector theta_vector(const DynkinLabels& d) {
  const int n1 = d.rank() + 1;
  std::vector<Integer> raw(static_cast<std::size_t>(n1));
  Integer total(0);
  for (int i = n1 - 1; i-- > 0;) raw[static_cast<std::size_t>(i)] = raw[static_cast<std::size_t>(i) + 1] + 1 + d[static_cast<std::size_t>(i)];
  for (const auto& v : raw) total += v;
  std::vector<Rational> theta;
  theta.reserve(raw.size());
  const Rational shift = make_rational(total, n1);
  for (const auto& v : raw) theta.push_back(Rational(v) - shift);
  return {d.rank(), std::move(theta)};
}

/// Theta(s) = sum_I theta_I^s.
inline Rational theta_power(int s, const DynkinLabels& d) {
  if (s < 1) throw DomainError("power-sum degree must be positive");
  const auto theta = theta_vector(d);
  Rational acc(0);
  for (const auto& t : theta.values()) acc += pow(t, static_cast<unsigned>(s));
  return acc;
}

/// Theta(s) for s = 1..max_degree in one pass (index 0 unused, holds N+1).
inline std::vector<Rational> theta_powers(const DynkinLabels& d, int max_degree) {
  std::vector<Rational> out(static_cast<std::size_t>(max_degree) + 1);
  const auto theta = theta_vector(d);
  for (const auto& t : theta.values()) {
    Rational p(1);
    out[0] += 1;
    for (int s = 1; s <= max_degree; ++s) {
      p *= t;
      out[static_cast<std::size_t>(s)] += p;
    }
  }
  return out;
}

/// Size of the Weyl orbit: distinct permutations of (q_1,...,q_sigma,0,...,0) in
/// N+1 slots; 0 when the label has more parts than slots.
inline Integer orbit_dimension(const OrbitLabel& q, int rank) {
  const long slots = rank + 1;
  const long sigma = static_cast<long>(q.size());
  if (sigma > slots) return 0;
  Integer d = factorial(static_cast<unsigned long>(slots)) / factorial(static_cast<unsigned long>(slots - sigma));
  std::size_t i = 0;
  while (i < q.size()) {
    std::size_t j = i;
    while (j < q.size() && q[j] == q[i]) ++j;
    d /= factorial(j - i);
    i = j;
  }
  return d;
}

/// Every weight of the orbit as an (N+1)-vector of nonnegative integers in the
/// q-normalization (coordinates sum to the height). Guarded against large orbits.
inline std::vector<std::vector<int>> orbit_weights(const OrbitLabel& q, int rank, std::uint64_t guard = 1000000) {
  if (static_cast<int>(q.size()) > rank + 1) throw DomainError("label has more parts than the rank allows");
  const Integer size = orbit_dimension(q, rank);
  if (size > Integer(static_cast<unsigned long>(guard))) throw DomainError("orbit too large");
  std::vector<int> v(static_cast<std::size_t>(rank) + 1, 0);
  for (std::size_t i = 0; i < q.size(); ++i) v[i] = q[i];
  std::sort(v.begin(), v.end());
  std::vector<std::vector<int>> out;
  out.reserve(size.get_ui());
  do {
    out.push_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

/// Weyl dimension formula: prod_{i<j} (theta_i - theta_j) / (j - i).
inline Integer weyl_dimension(const DynkinLabels& d) {
  const int n1 = d.rank() + 1;
  std::vector<Integer> raw(static_cast<std::size_t>(n1));
  for (int i = n1 - 1; i-- > 0;) raw[static_cast<std::size_t>(i)] = raw[static_cast<std::size_t>(i) + 1] + 1 + d[static_cast<std::size_t>(i)];
  Integer num(1), den(1);
  for (int i = 0; i < n1; ++i)
    for (int j = i + 1; j < n1; ++j) {
      num *= raw[static_cast<std::size_t>(i)] - raw[static_cast<std::size_t>(j)];
      den *= j - i;
    }
  if (num % den != 0) throw ValidationError("Weyl dimension is not integral");
  return num / den;
}

/// Multiplicities m(alpha) of the sub-dominant orbits in an irreducible
/// representation, keyed by orbit label (ascending grade).
class MultiplicityTable {
 public:
  MultiplicityTable() = default;

  /// Table with only m(top) = 1 filled in.
  static MultiplicityTable for_top(const OrbitLabel& top) {
    MultiplicityTable t;
    t.top_ = top;
    t.entries_[top] = 1;
    return t;
  }

  const OrbitLabel& top() const { return top_; }
  const std::map<OrbitLabel, Integer>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  Integer get(const OrbitLabel& label) const {
    auto it = entries_.find(label);
    return it == entries_.end() ? Integer(0) : it->second;
  }

  void set(const OrbitLabel& label, const Integer& m) {
    if (m < 0) throw DomainError("multiplicities must be nonnegative");
    if (label.weight() != top_.weight() || !dominates(top_, label))
      throw DomainError("label " + label.to_string() + " is not sub-dominant to " + top_.to_string());
    entries_[label] = m;
  }

  friend bool operator==(const MultiplicityTable&, const MultiplicityTable&) = default;

 private:
  OrbitLabel top_;
  std::map<OrbitLabel, Integer> entries_;
};

/// sum_alpha m(alpha) * |orbit(alpha)|
inline Integer rep_dimension(const MultiplicityTable& t, int rank) {
  Integer total(0);
  for (const auto& [label, m] : t.entries()) total += m * orbit_dimension(label, rank);
  return total;
}

}  // namespace anmult
