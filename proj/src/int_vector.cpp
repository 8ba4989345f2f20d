#include "sortreduce/int_vector.hpp"

#include <algorithm>
#include <limits>

#include "sortreduce/errors.hpp"

namespace sortreduce {
namespace {

void check_same_dim(const IntVector& a, const IntVector& b) {
  if (a.dim() != b.dim()) throw DimensionError("vector dimensions differ");
}

void add_product(mpz_class& acc, std::int64_t value, const BigInt& weight) {
  if (value >= 0) {
    mpz_addmul_ui(acc.get_mpz_t(), weight.get_mpz_t(), static_cast<unsigned long>(value));
  } else {
    // -(value) as unsigned, well defined for INT64_MIN
    unsigned long mag = 0UL - static_cast<unsigned long>(value);
    mpz_submul_ui(acc.get_mpz_t(), weight.get_mpz_t(), mag);
  }
}

}  // namespace

IntVector::IntVector(std::size_t dim) : dim_(dim) {
  if (dim > std::numeric_limits<std::uint32_t>::max()) throw DimensionError("dimension too large");
}

IntVector IntVector::unit(std::size_t dim, std::size_t k) {
  if (k >= dim) throw DimensionError("unit vector index out of range");
  IntVector v(dim);
  v.entries_.push_back({static_cast<std::uint32_t>(k), 1});
  return v;
}

IntVector IntVector::from_values(std::span<const std::int64_t> values) {
  IntVector v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0) v.entries_.push_back({static_cast<std::uint32_t>(i), values[i]});
  }
  return v;
}

IntVector IntVector::from_values(std::span<const BigInt> values) {
  IntVector v(values.size());
  v.wide_ = true;
  v.values_.assign(values.begin(), values.end());
  v.narrow_if_possible();
  return v;
}

IntVector IntVector::from_entries(std::size_t dim, std::vector<Entry> entries) {
  IntVector v(dim);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].index >= dim || (i > 0 && entries[i].index <= entries[i - 1].index)) {
      throw DimensionError("entries must be strictly increasing and inside the dimension");
    }
  }
  std::erase_if(entries, [](const Entry& e) { return e.value == 0; });
  v.entries_ = std::move(entries);
  return v;
}

BigInt IntVector::at(std::size_t i) const {
  if (i >= dim_) throw DimensionError("index out of range");
  if (wide_) return values_[i];
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, std::size_t idx) { return e.index < idx; });
  if (it != entries_.end() && it->index == i) return BigInt(static_cast<long>(it->value));
  return BigInt(0);
}

std::vector<BigInt> IntVector::to_values() const {
  if (wide_) return values_;
  std::vector<BigInt> out(dim_);
  for (const Entry& e : entries_) out[e.index] = static_cast<long>(e.value);
  return out;
}

bool IntVector::is_zero() const {
  if (!wide_) return entries_.empty();
  return std::all_of(values_.begin(), values_.end(), [](const BigInt& x) { return x == 0; });
}

std::size_t IntVector::support_size() const {
  if (!wide_) return entries_.size();
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](const BigInt& x) { return x != 0; }));
}

BigInt IntVector::norm2() const {
  if (!wide_) {
    __int128 acc = 0;
    bool overflow = false;
    for (const Entry& e : entries_) {
      __int128 sq = static_cast<__int128>(e.value) * e.value;
      if (__builtin_add_overflow(acc, sq, &acc)) {
        overflow = true;
        break;
      }
    }
    if (!overflow) {
      // split into two 64-bit halves; acc >= 0
      unsigned __int128 u = static_cast<unsigned __int128>(acc);
      BigInt hi = static_cast<unsigned long>(u >> 64);
      BigInt lo = static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL);
      return (hi << 64) + lo;
    }
    BigInt total = 0;
    BigInt x;
    for (const Entry& e : entries_) {
      x = static_cast<long>(e.value);
      total += x * x;
    }
    return total;
  }
  BigInt total = 0;
  for (const BigInt& x : values_) total += x * x;
  return total;
}

BigInt IntVector::dot(std::span<const BigInt> weights) const {
  if (weights.size() != dim_) throw DimensionError("dot product dimension mismatch");
  BigInt acc = 0;
  if (!wide_) {
    for (const Entry& e : entries_) add_product(acc, e.value, weights[e.index]);
  } else {
    for (std::size_t i = 0; i < dim_; ++i) {
      if (values_[i] != 0) acc += values_[i] * weights[i];
    }
  }
  return acc;
}

IntVector IntVector::operator-() const { return sub_scaled(IntVector(dim_), BigInt(1), *this); }

IntVector operator+(const IntVector& a, const IntVector& b) { return sub_scaled(a, BigInt(-1), b); }

IntVector operator-(const IntVector& a, const IntVector& b) { return sub_scaled(a, BigInt(1), b); }

IntVector sub_scaled(const IntVector& a, const BigInt& factor, const IntVector& b) {
  check_same_dim(a, b);
  if (a.wide_ || b.wide_ || !factor.fits_slong_p()) return IntVector::wide_sub_scaled(a, factor, b);

  const std::int64_t f = factor.get_si();
  IntVector out(a.dim_);
  out.entries_.reserve(a.entries_.size() + b.entries_.size());
  auto ia = a.entries_.begin();
  auto ib = b.entries_.begin();
  while (ia != a.entries_.end() || ib != b.entries_.end()) {
    std::int64_t value;
    std::uint32_t index;
    if (ib == b.entries_.end() || (ia != a.entries_.end() && ia->index < ib->index)) {
      index = ia->index;
      value = ia->value;
      ++ia;
    } else {
      std::int64_t scaled;
      if (__builtin_mul_overflow(f, ib->value, &scaled)) return IntVector::wide_sub_scaled(a, factor, b);
      std::int64_t base = 0;
      if (ia != a.entries_.end() && ia->index == ib->index) {
        base = ia->value;
        ++ia;
      }
      index = ib->index;
      if (__builtin_sub_overflow(base, scaled, &value)) return IntVector::wide_sub_scaled(a, factor, b);
      ++ib;
    }
    if (value != 0) out.entries_.push_back({index, value});
  }
  return out;
}

IntVector IntVector::wide_sub_scaled(const IntVector& a, const BigInt& factor, const IntVector& b) {
  std::vector<BigInt> av = a.to_values();
  const std::vector<BigInt> bv = b.to_values();
  for (std::size_t i = 0; i < av.size(); ++i) {
    if (bv[i] != 0) av[i] -= factor * bv[i];
  }
  IntVector out(a.dim_);
  out.wide_ = true;
  out.values_ = std::move(av);
  out.narrow_if_possible();
  return out;
}

void IntVector::narrow_if_possible() {
  if (!wide_) return;
  for (const BigInt& x : values_) {
    if (!x.fits_slong_p()) return;
  }
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != 0) entries.push_back({static_cast<std::uint32_t>(i), values_[i].get_si()});
  }
  entries_ = std::move(entries);
  values_.clear();
  wide_ = false;
}

bool operator==(const IntVector& a, const IntVector& b) {
  if (a.dim_ != b.dim_) return false;
  if (!a.wide_ && !b.wide_) return a.entries_ == b.entries_;
  return a.to_values() == b.to_values();
}

}  // namespace sortreduce
