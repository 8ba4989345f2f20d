#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sortreduce/projection.hpp"
#include "sortreduce/solver.hpp"

namespace sortreduce {

/// k codewords over one modulus, optionally checked independent mod P.
class DualCode {
 public:
  /// Checks shared d and P, primality of P and rank k mod P; ConfigError otherwise.
  static DualCode checked(std::vector<DualCodeword> codewords);
  /// No rank check (the stack then refuses to run).
  static DualCode unchecked(std::vector<DualCodeword> codewords);

  std::size_t k() const { return codewords_.size(); }
  std::size_t dim() const { return codewords_.front().dim(); }
  const DualCodeword& operator[](std::size_t i) const { return codewords_[i]; }
  std::span<const DualCodeword> codewords() const { return codewords_; }
  bool rank_checked() const { return rank_checked_; }

 private:
  explicit DualCode(std::vector<DualCodeword> codewords, bool checked);
  std::vector<DualCodeword> codewords_;
  bool rank_checked_ = false;
};

struct CodimConfig {
  /// Per-level solver settings; the variant is forced to the stack's own.
  std::optional<std::uint64_t> max_iterations;
  /// Multipliers used when harvesting each level (default q_i = i, i = 1..d).
  std::vector<BigInt> q_schedule;
  /// Multiplier for the final run against the last codeword.
  BigInt final_q = 1;
  /// k may not exceed max_k_ratio * d.
  double max_k_ratio = 0.1;
  /// Worker threads for harvesting; 0 picks the hardware concurrency.
  unsigned threads = 0;
  std::uint64_t seed = 0;
};

/// First outputs of run_q_multiplied(v, q_j, d) for the first `count` entries
/// of the schedule, in schedule order. HarvestError names the first q (in
/// schedule order) whose run found nothing.
std::vector<IntVector> harvest_codim1(const DualCodeword& v, std::size_t count, std::span<const BigInt> q_schedule,
                                      const SolverConfig& config, unsigned threads = 0);
/// As above but each run reduces a copy of `input` mod P (levels two and up).
std::vector<IntVector> harvest_level(const DualCodeword& v, const std::vector<IntVector>& input, std::size_t count,
                                     std::span<const BigInt> q_schedule, const SolverConfig& config,
                                     unsigned threads = 0);

struct CodimResult {
  RunReport report;
  /// The harvested list fed into each level after the first (level m's input is levels[m-1]).
  std::vector<std::vector<IntVector>> levels;
};

/// Co-dimension 2: harvest d vectors orthogonal to v1, then reduce them against v2.
CodimResult run_codim2(const DualCode& code, const CodimConfig& config = {});
/// General co-dimension k by induction; k = 1 is a single q-multiplied run.
CodimResult run_codimk(const DualCode& code, const CodimConfig& config = {});

}  // namespace sortreduce
