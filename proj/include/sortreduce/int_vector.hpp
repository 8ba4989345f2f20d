#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sortreduce/bigint.hpp"

namespace sortreduce {

/// Arbitrary-precision integer vector of fixed dimension.
///
/// Vectors produced by the reduction algorithms start out as unit or sparse
/// +-1 vectors and stay small for many iterations, so the common case is kept
/// as a sorted list of (index, int64) nonzeros. Any operation whose result
/// leaves the int64 range switches that result to a dense BigInt form; results
/// that fit again are narrowed back.
class IntVector {
 public:
  struct Entry {
    std::uint32_t index;
    std::int64_t value;
    bool operator==(const Entry&) const = default;
  };

  IntVector() = default;
  /// Zero vector of the given dimension.
  explicit IntVector(std::size_t dim);

  static IntVector unit(std::size_t dim, std::size_t k);
  static IntVector from_values(std::span<const std::int64_t> values);
  static IntVector from_values(std::span<const BigInt> values);
  /// Entries must be strictly increasing in index and below dim; zero values are dropped.
  static IntVector from_entries(std::size_t dim, std::vector<Entry> entries);

  std::size_t dim() const { return dim_; }
  BigInt at(std::size_t i) const;
  std::vector<BigInt> to_values() const;

  bool is_zero() const;
  std::size_t support_size() const;
  /// True while every entry fits in int64 (the compact representation).
  bool is_narrow() const { return !wide_; }

  /// Exact squared Euclidean norm.
  BigInt norm2() const;
  /// Exact sum of value_i * weights_i. weights.size() must equal dim().
  BigInt dot(std::span<const BigInt> weights) const;

  IntVector operator-() const;
  friend IntVector operator+(const IntVector& a, const IntVector& b);
  friend IntVector operator-(const IntVector& a, const IntVector& b);
  /// a - factor * b.
  friend IntVector sub_scaled(const IntVector& a, const BigInt& factor, const IntVector& b);

  friend bool operator==(const IntVector& a, const IntVector& b);

 private:
  void narrow_if_possible();
  static IntVector wide_sub_scaled(const IntVector& a, const BigInt& factor, const IntVector& b);

  std::size_t dim_ = 0;
  std::vector<Entry> entries_;     // narrow form: sorted, nonzero only
  std::vector<BigInt> values_;     // wide form: dense
  bool wide_ = false;
};

}  // namespace sortreduce
