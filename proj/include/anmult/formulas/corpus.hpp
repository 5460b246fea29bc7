#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "anmult/freudenthal.hpp"

namespace anmult {

/// A representation with its oracle-verified multiplicity table. The table is
/// rank independent; orbits that do not fit at a given rank simply drop out.
struct CorpusEntry {
  OrbitLabel top;
  MultiplicityTable table;
};

using Corpus = std::vector<CorpusEntry>;

inline const MultiplicityTable& cached_stable_multiplicities(const OrbitLabel& q) {
  static std::mutex mutex;
  static std::map<OrbitLabel, std::unique_ptr<MultiplicityTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[q];
  if (!slot) slot = std::make_unique<MultiplicityTable>(stable_multiplicities(q));
  return *slot;
}

/// Every top label of the given height, in gradation order, with Freudenthal tables.
inline Corpus corpus_of_height(int h) {
  Corpus out;
  for (const auto& q : enumerate_partitions(h)) out.push_back({q, cached_stable_multiplicities(q)});
  return out;
}

inline Corpus corpus_of_heights(int lo, int hi) {
  Corpus out;
  for (int h = lo; h <= hi; ++h)
    for (auto& e : corpus_of_height(h)) out.push_back(std::move(e));
  return out;
}

/// Entries usable at rank N: the top needs fewer parts than N.
inline std::vector<const CorpusEntry*> usable_at(const Corpus& corpus, int rank) {
  std::vector<const CorpusEntry*> out;
  for (const auto& e : corpus)
    if (static_cast<int>(e.top.size()) < rank) out.push_back(&e);
  return out;
}

inline std::string describe_heights(int lo, int hi) {
  return lo == hi ? "height " + std::to_string(lo) : "heights " + std::to_string(lo) + ".." + std::to_string(hi);
}

}  // namespace anmult
