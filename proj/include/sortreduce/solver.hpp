#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sortreduce/bigint.hpp"
#include "sortreduce/int_vector.hpp"
#include "sortreduce/projection.hpp"

namespace sortreduce {

enum class Variant { simple, q_multiplied, general, block };
/// shrink: the pass emits N-1 reductions. keep_first: the smallest vector is
/// carried over in front of them, preserving the list size.
enum class Boundary { shrink, keep_first };

std::string to_string(Variant v);
std::string to_string(Boundary b);
std::string to_string(ProjKind k);
Variant parse_variant(const std::string& s);

struct SolverConfig {
  Variant variant = Variant::simple;
  Boundary boundary = Boundary::shrink;
  std::size_t k_max = 2;
  BigInt q = 1;
  /// n in the cutoff floor(P^(1/n)); defaults to initial list size - 2.
  std::optional<std::uint64_t> cutoff_denominator;
  ProjKind proj_kind = ProjKind::raw;
  /// Defaults to max(16, 4 * predicted_iterations(P, list size)).
  std::optional<std::uint64_t> max_iterations;
  bool discard_zero_vectors = false;
  /// Recorded in the report; the solver itself draws no randomness.
  std::uint64_t seed = 0;
  /// Recompute every cached projection after each pass (slow; for tests).
  bool audit = false;

  /// Pairwise pass on the unit basis with exact projections.
  static SolverConfig simple();
  /// As simple against (q v) mod P.
  static SolverConfig q_multiplied(BigInt q);
  /// Pairwise pass mod P on a caller list, keeping the first vector and discarding zeros.
  static SolverConfig general();
  /// Best-choice block reduction with arities up to k_max.
  static SolverConfig block(std::size_t k_max);
  /// One level of the co-dimension stack: shrink boundary, mod-P projections, zero discard.
  static SolverConfig codim_level();

  /// ConfigError when the fields contradict the variant.
  void validate() const;
};

enum class RunStatus { found, exhausted_list, iteration_cap };
std::string to_string(RunStatus s);

struct IterationRecord {
  std::size_t list_size = 0;
  BigInt min_proj;
  BigInt max_proj;
  BigInt max_norm2;
  std::size_t max_lineage_depth = 0;
  std::size_t reductions_fired = 0;
};

struct RunReport {
  RunStatus status = RunStatus::exhausted_list;
  /// Nonzero vectors of projection 0 present at termination, in list order.
  std::vector<IntVector> output_vectors;
  std::uint64_t iterations = 0;
  std::size_t initial_list_size = 0;
  std::size_t final_list_size = 0;
  /// Squared length of the first output (or of the first list element when nothing was found).
  BigInt first_norm2;
  Real length_of_first;
  /// Largest squared length in the input list (L0^2).
  BigInt initial_norm2;
  BigInt cutoff_root;
  std::uint64_t cutoff_denominator = 0;
  std::uint64_t max_iterations = 0;
  /// Largest number of vectors combined in one step (2 except for block runs).
  std::size_t max_arity = 2;
  /// Reductions along the line that produced the first vector.
  std::size_t lineage_depth_of_first = 0;
  std::vector<IterationRecord> trace;
  Variant variant = Variant::simple;
  ProjKind proj_kind = ProjKind::raw;
  std::uint64_t seed = 0;
  std::string generator;

  Real initial_length() const;
  friend bool operator==(const RunReport&, const RunReport&);
};

struct RunHooks {
  /// Called after every pass, once the new list is sorted.
  std::function<void(std::uint64_t iteration, std::span<const TrackedVector> list)> after_pass;
};

/// Pairwise reduction of the unit basis with exact projections. d must equal
/// v.dim() and be at least 3.
RunReport run_simple(const DualCodeword& v, std::size_t d, const SolverConfig& config, const RunHooks& hooks = {});

/// run_simple against (q v) mod P on the unit basis; outputs are checked
/// against the original v. P must be prime and q nonzero mod P.
RunReport run_q_multiplied(const DualCodeword& v, const BigInt& q, std::size_t d, const SolverConfig& config,
                           const RunHooks& hooks = {});
/// As above on a caller-supplied list (the co-dimension stack's levels).
RunReport run_q_multiplied(const DualCodeword& v, const BigInt& q, std::vector<IntVector> input,
                           const SolverConfig& config, const RunHooks& hooks = {});

/// Pairwise reduction mod P of an arbitrary input list (at least 3 vectors).
RunReport run_general(const DualCodeword& v, std::vector<IntVector> input, const SolverConfig& config,
                      const RunHooks& hooks = {});

/// Best-choice block reduction. Uses the unit basis when `input` is empty.
RunReport run_block(const DualCodeword& v, std::size_t d, std::size_t k_max, const SolverConfig& config,
                    std::vector<IntVector> input = {}, const RunHooks& hooks = {});

/// Membership of every output against v, recomputed from scratch.
bool outputs_are_members(const RunReport& report, const DualCodeword& v);

}  // namespace sortreduce
