#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sortreduce/bigint.hpp"
#include "sortreduce/int_vector.hpp"
#include "sortreduce/projection.hpp"
#include "sortreduce/working_list.hpp"

namespace sortreduce::testing {

inline std::vector<BigInt> big(std::initializer_list<long> xs) {
  std::vector<BigInt> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

inline IntVector vec(std::initializer_list<long> xs) {
  std::vector<std::int64_t> v(xs.begin(), xs.end());
  return IntVector::from_values(std::span<const std::int64_t>(v));
}

// Codeword whose entries are exactly `projections`, so e_i has raw projection projections[i].
inline DualCodeword codeword_of(const std::vector<BigInt>& projections, const BigInt& P) {
  return DualCodeword(projections, Modulus(P));
}

// Sorted list of unit vectors realizing the given nondecreasing projections (raw kind).
inline WorkingList unit_list(const std::vector<BigInt>& projections, const DualCodeword& v) {
  std::vector<TrackedVector> items;
  for (std::size_t i = 0; i < projections.size(); ++i) {
    items.push_back(TrackedVector::track(IntVector::unit(projections.size(), i), v, ProjKind::raw));
  }
  return WorkingList::from_sorted(std::move(items));
}

inline std::vector<BigInt> random_sorted(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  std::vector<long> xs(n);
  for (auto& x : xs) x = dist(rng);
  std::sort(xs.begin(), xs.end());
  std::vector<BigInt> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace sortreduce::testing
