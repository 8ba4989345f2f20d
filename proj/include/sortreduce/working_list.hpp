#pragma once

#include <cstddef>
#include <vector>

#include "sortreduce/projection.hpp"

namespace sortreduce {

/// Projection-sorted list of tracked vectors consumed and produced by each pass.
class WorkingList {
 public:
  WorkingList() = default;
  explicit WorkingList(std::vector<TrackedVector> items) : items_(std::move(items)) {}

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const TrackedVector& operator[](std::size_t i) const { return items_[i]; }
  std::span<const TrackedVector> items() const { return items_; }
  std::vector<TrackedVector> release() && { return std::move(items_); }
  /// Projections in list order.
  std::vector<BigInt> projections() const;

  bool sorted() const { return sorted_; }
  /// Stable ascending sort by projection. Returns the permutation: entry i of
  /// the result is the pre-sort position of the element now at i.
  std::vector<std::size_t> sort();
  /// Removes all-zero vectors; returns the surviving pre-removal positions.
  std::vector<std::size_t> discard_zero_vectors();
  /// Builds a list already known to be sorted, checking the order.
  static WorkingList from_sorted(std::vector<TrackedVector> items);

 private:
  std::vector<TrackedVector> items_;
  bool sorted_ = false;
};

}  // namespace sortreduce
