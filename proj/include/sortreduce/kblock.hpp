#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sortreduce/projection.hpp"
#include "sortreduce/working_list.hpp"

namespace sortreduce {

// Positions in this header are 0-based: the target at position t may draw
// donors from positions 0..t-1 of a list sorted by projection.

/// Which donors a block reduction subtracted from the target.
struct BlockChoice {
  std::size_t arity = 2;                    // 1 + donor_indices.size()
  std::vector<std::size_t> donor_indices;   // strictly increasing, all < target
  bool sign_flipped = false;                // result was negated to keep its projection >= 0
  bool fired = true;                        // false when reduce_2's cutoff rejected the ratio
};

struct BlockResult {
  TrackedVector vec;
  BlockChoice choice;
};

/// Best donor tuple for a residual search.
struct DonorMatch {
  BigInt delta;                      // |target - sum of donor projections|
  std::vector<std::size_t> indices;  // lexicographically smallest among minimizers
};

/// Minimizes |target - sum(values[i] for i in tuple)| over strictly increasing
/// tuples of `count` positions below `prefix`. `values` must be nondecreasing on
/// that prefix. Linear time for count <= 2 (plus a log factor for tie-breaking),
/// O(prefix^(count-1)) beyond. Empty when fewer than `count` positions exist.
std::optional<DonorMatch> search_donors(std::span<const BigInt> values, std::size_t prefix,
                                        const BigInt& target, std::size_t count);

/// Exhaustive O(prefix^2) pair search; the reference for the linear sweep.
std::optional<DonorMatch> search_donor_pairs_brute(std::span<const BigInt> values, std::size_t prefix,
                                                   const BigInt& target);

/// sign(c - a - b) * (v_t - v_i - v_j) for the pair i < j < t minimizing |c - a - b|,
/// found by brute force. `P` is needed only for mod-P lists. ArityError when t < 2.
BlockResult reduce3(std::size_t target, const WorkingList& list, const BigInt& P = 0);
/// Same contract as reduce3 with a two-pointer sweep.
BlockResult reduce3_fast(std::size_t target, const WorkingList& list, const BigInt& P = 0);
/// k = 2 subtracts the immediate predecessor once; k >= 3 searches k-1 donors.
/// ArityError when t < k - 1.
BlockResult reduce_k(std::size_t k, std::size_t target, const WorkingList& list, const BigInt& P = 0);

/// Evaluates reduce_2 (cutoff-gated, via reduce2 against the predecessor) and
/// reduce_i for 3 <= i <= min(k_max, t + 1); returns the smallest projection,
/// preferring the smaller arity on ties. Requires t >= 1.
///
/// When the cutoff rejects, reduce_2 yields the predecessor, as in the pairwise
/// step, so that k_max = 2 reproduces the pairwise pass exactly.
BlockResult best_choice_reduce(std::size_t k_max, std::size_t target, const WorkingList& list,
                               const CutoffRule& rule);
/// As above with the list's projections precomputed (saves a copy per target).
BlockResult best_choice_reduce(std::size_t k_max, std::size_t target, const WorkingList& list,
                               const CutoffRule& rule, std::span<const BigInt> projections);

}  // namespace sortreduce
