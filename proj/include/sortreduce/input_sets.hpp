#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sortreduce/bigint.hpp"
#include "sortreduce/int_vector.hpp"
#include "sortreduce/projection.hpp"

namespace sortreduce {

/// Seeded 64-bit generator with index-addressable substreams.
///
/// Stream (seed, id) is std::mt19937_64 seeded with splitmix64(seed ^ splitmix64(id)).
/// mt19937_64's output sequence is fixed by the C++ standard and every
/// derived quantity below is computed from raw 64-bit words, so draws are
/// identical across platforms and standard libraries.
class Stream {
 public:
  static constexpr const char* generator_name = "mt19937_64+splitmix64";

  explicit Stream(std::uint64_t seed, std::uint64_t id = 0);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [0, bound) by rejection from the next power of two; bound > 0.
  BigInt below(const BigInt& bound);
  /// Uniform on [0, 1) with 192 random bits.
  Real unit_real();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

enum class RecipeKind { unit_basis, sparse_signed, pattern };

struct InputRecipe {
  RecipeKind kind = RecipeKind::unit_basis;
  std::uint64_t count = 0;
  std::uint32_t support_size = 0;
  std::uint32_t plus_count = 0;
  std::uint32_t minus_count = 0;
  std::vector<std::int64_t> pattern_values;
  std::uint64_t seed = 0;

  /// Checks the recipe's internal consistency against dimension d; ConfigError otherwise.
  void validate(std::size_t d) const;
  /// Squared length shared by every generated vector (1 for the unit basis).
  std::int64_t norm2() const;
};

/// e_1 .. e_d.
std::vector<IntVector> unit_basis(std::size_t d);
/// Vectors with support_size distinct uniform indices; the first plus_count
/// positions of a shuffled support get +1 and the rest -1, or the pattern
/// values in order for PATTERN recipes. Vector j draws from substream j.
std::vector<IntVector> sparse_signed(std::size_t d, const InputRecipe& recipe);
/// Dispatches on the recipe kind.
std::vector<IntVector> generate(std::size_t d, const InputRecipe& recipe);
/// Concatenation of several recipes, in order.
std::vector<IntVector> generate(std::size_t d, const std::vector<InputRecipe>& recipes);

/// Entries i.i.d. uniform on [0, P); entry i draws from substream i. An
/// all-zero draw is repeated with fresh substreams.
DualCodeword sample_dual_uniform(std::size_t d, const Modulus& P, std::uint64_t seed);
/// Entries round(exp(u)) with u uniform on [ln sqrt(P), ln P], rounded half up
/// and clamped to P - 1. Requires P >= 4.
DualCodeword sample_dual_loguniform(std::size_t d, const Modulus& P, std::uint64_t seed);

/// The three-part input set used for the 40-dimensional challenge lattice,
/// with counts multiplied by `scale` (1.0 reproduces the full 8e6 vectors).
std::vector<InputRecipe> darmstadt40_recipes(double scale, std::uint64_t seed);
/// The two-part input set used for the 42-dimensional challenge lattice (1.92e7 vectors at scale 1).
std::vector<InputRecipe> darmstadt42_recipes(double scale, std::uint64_t seed);

}  // namespace sortreduce
