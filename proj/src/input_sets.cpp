#include "sortreduce/input_sets.hpp"

#include <algorithm>
#include <cmath>

#include "sortreduce/errors.hpp"

namespace sortreduce {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Stream::Stream(std::uint64_t seed, std::uint64_t id) : engine_(splitmix64(seed ^ splitmix64(id))) {}

std::uint64_t Stream::below(std::uint64_t bound) {
  if (bound == 0) throw ConfigError("empty sampling range");
  // reject the top partial block so every residue is equally likely
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

BigInt Stream::below(const BigInt& bound) {
  if (bound <= 0) throw ConfigError("empty sampling range");
  if (bound == 1) return 0;
  const std::size_t bits = bit_length(BigInt(bound - 1));
  const std::size_t words = (bits + 63) / 64;
  const std::size_t spare = words * 64 - bits;
  BigInt x;
  do {
    x = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t word = next();
      if (w == 0 && spare > 0) word >>= spare;  // leading word carries the short top
      x <<= 64;
      x += static_cast<unsigned long>(word);
    }
  } while (x >= bound);
  return x;
}

Real Stream::unit_real() {
  BigInt x = 0;
  for (int w = 0; w < 3; ++w) {
    x <<= 64;
    x += static_cast<unsigned long>(next());
  }
  Real r = to_real(x);
  return boost::multiprecision::ldexp(r, -192);
}

void InputRecipe::validate(std::size_t d) const {
  switch (kind) {
    case RecipeKind::unit_basis:
      return;
    case RecipeKind::sparse_signed:
      if (plus_count + minus_count != support_size) {
        throw ConfigError("sparse recipe: plus and minus counts must add up to the support size");
      }
      break;
    case RecipeKind::pattern:
      if (pattern_values.size() != support_size) {
        throw ConfigError("pattern recipe: pattern length must equal the support size");
      }
      if (std::any_of(pattern_values.begin(), pattern_values.end(), [](std::int64_t x) { return x == 0; })) {
        throw ConfigError("pattern recipe: pattern values must be nonzero");
      }
      break;
  }
  if (support_size == 0) throw ConfigError("recipe support size must be positive");
  if (support_size > d) throw ConfigError("recipe support size exceeds the dimension");
}

std::int64_t InputRecipe::norm2() const {
  switch (kind) {
    case RecipeKind::unit_basis:
      return 1;
    case RecipeKind::sparse_signed:
      return support_size;
    case RecipeKind::pattern: {
      std::int64_t s = 0;
      for (std::int64_t x : pattern_values) s += x * x;
      return s;
    }
  }
  return 0;
}

std::vector<IntVector> unit_basis(std::size_t d) {
  std::vector<IntVector> out;
  out.reserve(d);
  for (std::size_t k = 0; k < d; ++k) out.push_back(IntVector::unit(d, k));
  return out;
}

std::vector<IntVector> sparse_signed(std::size_t d, const InputRecipe& recipe) {
  if (recipe.kind == RecipeKind::unit_basis) throw ConfigError("sparse_signed needs a sparse or pattern recipe");
  recipe.validate(d);
  const std::uint32_t s = recipe.support_size;

  std::vector<std::int64_t> values(s);
  if (recipe.kind == RecipeKind::pattern) {
    values = recipe.pattern_values;
  } else {
    std::fill(values.begin(), values.begin() + recipe.plus_count, 1);
    std::fill(values.begin() + recipe.plus_count, values.end(), -1);
  }

  std::vector<IntVector> out;
  out.reserve(recipe.count);
  std::vector<std::uint32_t> support;
  std::vector<IntVector::Entry> entries;
  for (std::uint64_t j = 0; j < recipe.count; ++j) {
    Stream rng(recipe.seed, j);
    // Floyd's sampling gives s distinct indices without touching all d
    support.clear();
    for (std::uint64_t t = d - s; t < d; ++t) {
      auto pick = static_cast<std::uint32_t>(rng.below(t + 1));
      if (std::find(support.begin(), support.end(), pick) != support.end()) pick = static_cast<std::uint32_t>(t);
      support.push_back(pick);
    }
    for (std::size_t i = s; i > 1; --i) std::swap(support[i - 1], support[rng.below(i)]);
    entries.clear();
    for (std::uint32_t i = 0; i < s; ++i) entries.push_back({support[i], values[i]});
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
    out.push_back(IntVector::from_entries(d, entries));
  }
  return out;
}

std::vector<IntVector> generate(std::size_t d, const InputRecipe& recipe) {
  if (recipe.kind == RecipeKind::unit_basis) return unit_basis(d);
  return sparse_signed(d, recipe);
}

std::vector<IntVector> generate(std::size_t d, const std::vector<InputRecipe>& recipes) {
  std::vector<IntVector> out;
  for (const InputRecipe& r : recipes) {
    auto part = generate(d, r);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

DualCodeword sample_dual_uniform(std::size_t d, const Modulus& P, std::uint64_t seed) {
  if (d == 0) throw DimensionError("codeword dimension must be positive");
  std::vector<BigInt> entries(d);
  for (std::uint64_t attempt = 0;; ++attempt) {
    bool nonzero = false;
    for (std::size_t i = 0; i < d; ++i) {
      Stream rng(seed, (attempt << 40) | i);
      entries[i] = rng.below(P.value());
      nonzero = nonzero || entries[i] != 0;
    }
    if (nonzero) return DualCodeword(entries, P);
  }
}

DualCodeword sample_dual_loguniform(std::size_t d, const Modulus& P, std::uint64_t seed) {
  if (d == 0) throw DimensionError("codeword dimension must be positive");
  if (P.value() < 4) throw ConfigError("log-uniform sampling needs P >= 4");
  const Real hi = ln(P.value());
  const Real lo = hi / 2;
  const BigInt top = P.value() - 1;
  std::vector<BigInt> entries(d);
  for (std::size_t i = 0; i < d; ++i) {
    Stream rng(seed, i);
    Real u = lo + (hi - lo) * rng.unit_real();
    BigInt x = floor_to_integer(Real(boost::multiprecision::exp(u) + Real(0.5)));
    entries[i] = x > top ? top : x;
  }
  return DualCodeword(entries, P);
}

namespace {

std::uint64_t scaled(double count, double scale) {
  const double n = std::floor(count * scale + 0.5);
  return n < 1 ? 1 : static_cast<std::uint64_t>(n);
}

InputRecipe sparse(std::uint64_t count, std::uint32_t plus, std::uint32_t minus, std::uint64_t seed) {
  InputRecipe r;
  r.kind = RecipeKind::sparse_signed;
  r.count = count;
  r.support_size = plus + minus;
  r.plus_count = plus;
  r.minus_count = minus;
  r.seed = seed;
  return r;
}

}  // namespace

std::vector<InputRecipe> darmstadt40_recipes(double scale, std::uint64_t seed) {
  if (!(scale > 0)) throw ConfigError("recipe scale must be positive");
  InputRecipe pattern;
  pattern.kind = RecipeKind::pattern;
  pattern.count = scaled(1.6e6, scale);
  pattern.support_size = 5;
  pattern.pattern_values = {1, 2, -1, -1, -1};
  pattern.seed = splitmix64(seed + 2);
  return {sparse(scaled(3.2e6, scale), 8, 8, splitmix64(seed)), sparse(scaled(3.2e6, scale), 8, 7, splitmix64(seed + 1)),
          pattern};
}

std::vector<InputRecipe> darmstadt42_recipes(double scale, std::uint64_t seed) {
  if (!(scale > 0)) throw ConfigError("recipe scale must be positive");
  return {sparse(scaled(9.6e6, scale), 8, 8, splitmix64(seed)), sparse(scaled(9.6e6, scale), 8, 7, splitmix64(seed + 1))};
}

}  // namespace sortreduce
