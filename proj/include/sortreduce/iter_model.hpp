#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sortreduce/bigint.hpp"

namespace sortreduce {

// Iteration-count and length models. Every formula is evaluated in 50-digit
// arithmetic; P and d are taken as reals so that non-integer arguments
// (P = e, say) can be probed directly.

/// Applies P_{k+1} = P_k ln(P_k) / d starting from P_1 = P until P_n <= 1 and
/// returns n - 1, the number of steps applied. Throws DivergenceError if the
/// sequence stops decreasing before reaching 1.
std::uint64_t recursion_count(const Real& P, const Real& d);

/// ln P / ln(d / (2 ln P)); RegimeError unless d > 2 ln P.
Real n0_worst(const Real& P, const Real& d);
/// ln(2P/d) / ln(d / (2 ln P)); same regime as n0_worst.
Real n0_worst_improved(const Real& P, const Real& d);
/// x / (1/2 - x/d) with x = n0_worst(P, d); RegimeError when the denominator is <= 0.
Real n0_effective_corrected(const Real& P, const Real& d);
/// Refined: ln(2P/d) / ln(d / ln P). Unrefined: ln P / ln(d / ln P). RegimeError unless d > ln P.
Real n0_avg_coarse(const Real& P, const Real& d, bool refined = true);

/// c_d = 0.2 + 3 / ln(sqrt(70 d)).
Real fit_coefficient(const Real& d);
/// exp(c_d (ln(P/d))^0.334); RegimeError when P <= d.
Real n0_opt_fit(const Real& P, const Real& d);
/// ceil(n0_opt_fit) + 1.
std::uint64_t predicted_iterations(const Real& P, const Real& d);

enum class BoundMode { worst_exponent, fit };

/// worst_exponent: (sqrt2 (2P/d)^(1/(2 log2(d/ln P))), 2 (2P/d)^(1/log2(d/ln P))).
/// fit: (sqrt2^m, 2^m) with m = predicted_iterations(P, d).
std::pair<Real, Real> length_bound_interval(const Real& P, const Real& d, BoundMode mode);

/// log2(P) / log2(d_star), the predicted n + 1 for an input set of size d_star.
Real general_iterations(const Real& P, const Real& d_star);

/// (L0 sqrt2^iterations, L0 g^iterations) where root = floor(P^(1/n)) of the cutoff and
/// g = max(1 + root, max_arity): a k-party step with unit coefficients can grow a length k-fold.
std::pair<Real, Real> predict_length_bounds(std::uint64_t iterations, const Real& L0, const BigInt& cutoff_root,
                                            std::size_t max_arity = 2);

/// (L0 / sqrt2) P^(1 / (2 log2 d_star)); requires d_star >= 4.
Real predict_general_length(const Real& P, const Real& d_star, const Real& L0);

/// Inverse of L ~ P^(1/(2 log2 d*)): the input size 2^(log2 P / (2 log2 L)).
Real required_input_size(const Real& P, const Real& L);

struct IterPrediction {
  std::optional<Real> n0_worst;
  std::optional<Real> n0_worst_improved;
  std::optional<Real> n0_effective_corrected;
  std::optional<Real> n0_avg_coarse;
  std::optional<Real> n0_avg_coarse_unrefined;
  std::optional<std::uint64_t> n_recursion;
  std::optional<Real> n0_opt_fit;
  std::optional<std::uint64_t> predicted_iterations;
};

/// Evaluates every model; entries outside their regime are left empty.
IterPrediction predict_all(const Real& P, const Real& d);

/// One published run of the pairwise algorithm on a uniform codeword.
struct ReferenceRun {
  const char* P;           // as printed, three or four significant figures
  std::uint32_t d;
  std::uint32_t iterations;
  double length;           // 0 where the table gives none
  std::uint32_t predicted; // fitted model column; 0 where the table gives none
};

/// Iteration-model grid: 42 runs with measured and predicted iteration counts.
const std::vector<ReferenceRun>& reference_iteration_grid();
/// Length tables for d = 1000, 2000, 4000 and 8000 (iterations and final length).
const std::vector<ReferenceRun>& reference_length_tables();

}  // namespace sortreduce
