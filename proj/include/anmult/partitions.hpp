#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "anmult/exact/rational.hpp"

namespace anmult {

/// Integer partition: a weakly decreasing sequence of positive parts.
/// Ordering is lexicographic on the part sequence, which is the gradation used
/// throughout (for equal weights, (1,...,1) is least and (s) greatest).
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts) : parts_(parts) { validate(); }
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) { validate(); }

  /// All parts equal to one, k of them.
  static Partition ones(int k) { return Partition(std::vector<int>(static_cast<std::size_t>(k), 1)); }

  /// Parses "3,2,1,1"; the empty string is the empty partition.
  static Partition parse(std::string_view text) {
    std::vector<int> parts;
    if (text.empty()) return {};
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto comma = text.find(',', start);
      const auto token = text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start);
      if (token.empty()) throw DomainError("malformed partition '" + std::string(text) + "'");
      const Integer v = parse_integer(token);
      if (!v.fits_sint_p()) throw DomainError("partition part out of range");
      parts.push_back(static_cast<int>(v.get_si()));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    try {
      return Partition(std::move(parts));
    } catch (const std::invalid_argument& e) {
      throw DomainError(e.what());
    }
  }

  const std::vector<int>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  int operator[](std::size_t i) const { return parts_[i]; }
  /// Zero beyond the last part.
  int part_or_zero(std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  int weight() const {
    int s = 0;
    for (int p : parts_) s += p;
    return s;
  }

  bool contains_one() const { return !parts_.empty() && parts_.back() == 1; }

  /// "3,2,1,1"
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i != 0) out += ",";
      out += std::to_string(parts_[i]);
    }
    return out;
  }

  /// Digit-string form used for formula ids ("322"); falls back to the comma form
  /// when some part has more than one digit.
  std::string compact() const {
    for (int p : parts_)
      if (p > 9) return to_string();
    std::string out;
    for (int p : parts_) out += static_cast<char>('0' + p);
    return out;
  }

  /// Inverse of compact(): "322" -> (3,2,2); comma forms are accepted too.
  static Partition parse_compact(std::string_view text) {
    if (text.find(',') != std::string_view::npos) return parse(text);
    std::vector<int> parts;
    for (char c : text) {
      if (c < '1' || c > '9') throw DomainError("malformed partition id '" + std::string(text) + "'");
      parts.push_back(c - '0');
    }
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return Partition(std::move(parts));
  }

  friend auto operator<=>(const Partition&, const Partition&) = default;
  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  void validate() const {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
    }
  }

  std::vector<int> parts_;
};

namespace detail {

inline void partitions_into(int remaining, int max_part, std::vector<int>& prefix, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (int k = 1; k <= std::min(remaining, max_part); ++k) {
    prefix.push_back(k);
    partitions_into(remaining - k, k, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace detail

/// All partitions of s in gradation order: position i (1-based) is the grade.
inline std::vector<Partition> enumerate_partitions(int s) {
  if (s < 0) throw DomainError("partition weight must be nonnegative");
  std::vector<Partition> out;
  std::vector<int> prefix;
  detail::partitions_into(s, s, prefix, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// p(s) by Euler's pentagonal-number recurrence.
inline Integer partition_count(int s) {
  if (s < 0) throw DomainError("partition weight must be nonnegative");
  std::vector<Integer> p(static_cast<std::size_t>(s) + 1);
  p[0] = 1;
  for (int n = 1; n <= s; ++n) {
    Integer acc(0);
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      if (g1 > n) break;
      const bool plus = (k % 2) == 1;
      const Integer& a = p[static_cast<std::size_t>(n - g1)];
      if (plus) acc += a; else acc -= a;
      const int g2 = k * (3 * k + 1) / 2;
      if (g2 <= n) {
        const Integer& b = p[static_cast<std::size_t>(n - g2)];
        if (plus) acc += b; else acc -= b;
      }
    }
    p[static_cast<std::size_t>(n)] = acc;
  }
  return p[static_cast<std::size_t>(s)];
}

/// Partitions of s with no part equal to 1, in gradation order.
inline std::vector<Partition> no_one_partitions(int s) {
  std::vector<Partition> out;
  for (auto& p : enumerate_partitions(s))
    if (!p.contains_one()) out.push_back(std::move(p));
  return out;
}

/// Number of partitions of s without parts equal to 1: p(s) - p(s-1).
inline Integer kappa(int s) {
  if (s < 0) throw DomainError("partition weight must be nonnegative");
  if (s == 0) return 1;
  return partition_count(s) - partition_count(s - 1);
}

/// Dominance order: every prefix sum of a is at least the one of b.
inline bool dominates(const Partition& a, const Partition& b) {
  if (a.weight() != b.weight()) throw DomainError("dominance needs partitions of equal weight");
  int sa = 0, sb = 0;
  const std::size_t len = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < len; ++i) {
    sa += a.part_or_zero(i);
    sb += b.part_or_zero(i);
    if (sa < sb) return false;
  }
  return true;
}

/// 1-based position of p in enumerate_partitions(p.weight()).
inline std::size_t grade(const Partition& p) {
  const auto all = enumerate_partitions(p.weight());
  return static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), p) - all.begin()) + 1;
}

/// Partitions of q.weight() dominated by q, ascending grade; q itself comes last.
inline std::vector<Partition> sub_dominants(const Partition& q) {
  std::vector<Partition> out;
  for (auto& p : enumerate_partitions(q.weight()))
    if (dominates(q, p)) out.push_back(std::move(p));
  return out;
}

}  // namespace anmult
