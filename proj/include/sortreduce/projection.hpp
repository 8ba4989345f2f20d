#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sortreduce/bigint.hpp"
#include "sortreduce/int_vector.hpp"

namespace sortreduce {

/// The modulus P >= 2 of the code, with an optional cached primality verdict.
class Modulus {
 public:
  explicit Modulus(BigInt value);

  const BigInt& value() const { return value_; }

  /// Verdict of the probabilistic test if it has been run, otherwise empty.
  std::optional<bool> known_prime() const { return is_prime_; }
  /// Runs the test if needed; does not modify this object.
  bool is_prime() const;
  /// Copy of this modulus with the primality verdict filled in.
  Modulus with_primality() const;

  friend bool operator==(const Modulus& a, const Modulus& b) { return a.value_ == b.value_; }

 private:
  BigInt value_;
  std::optional<bool> is_prime_;
};

/// The vector v defining the membership constraint w . v = 0 (mod P).
class DualCodeword {
 public:
  /// Entries must lie in [0, P) and not all be zero.
  DualCodeword(std::vector<BigInt> entries, Modulus modulus);
  /// Reduces every entry into [0, P) first.
  static DualCodeword reduced(std::vector<BigInt> entries, Modulus modulus);

  std::size_t dim() const { return entries_.size(); }
  std::span<const BigInt> entries() const { return entries_; }
  const BigInt& operator[](std::size_t i) const { return entries_[i]; }
  const Modulus& modulus() const { return modulus_; }
  const BigInt& P() const { return modulus_.value(); }

  /// (q * v) mod P. Throws ConfigError if the result is the zero codeword.
  DualCodeword multiplied(const BigInt& q) const;

  friend bool operator==(const DualCodeword& a, const DualCodeword& b) {
    return a.modulus_ == b.modulus_ && a.entries_ == b.entries_;
  }

 private:
  std::vector<BigInt> entries_;
  Modulus modulus_;
};

enum class ProjKind { raw, mod_p };

/// Exact sum w_i v_i. Throws DimensionError on length mismatch.
BigInt pi0(const IntVector& w, const DualCodeword& v);
/// pi0(w, v) mod P in [0, P).
BigInt pi(const IntVector& w, const DualCodeword& v);

/// Least nonnegative residue of x modulo m.
BigInt canonical_mod(const BigInt& x, const BigInt& m);

/// A vector together with its cached projection.
struct TrackedVector {
  IntVector vec;
  BigInt proj;
  ProjKind kind = ProjKind::raw;

  static TrackedVector track(IntVector vec, const DualCodeword& v, ProjKind kind);
  /// Recomputes the projection; used to audit the cache.
  BigInt recompute(const DualCodeword& v) const;
};

/// Accepts a ratio floor r iff r^n <= P.
class CutoffRule {
 public:
  CutoffRule(std::uint64_t exponent_denominator, BigInt P);

  std::uint64_t exponent_denominator() const { return n_; }
  const BigInt& P() const { return P_; }
  /// floor(P^(1/n)); r is accepted iff r <= root().
  const BigInt& root() const { return root_; }

  bool accepts(const BigInt& r) const { return r <= root_; }

 private:
  std::uint64_t n_;
  BigInt P_;
  BigInt root_;
};

/// Same as rule.accepts(r); r must be nonnegative.
bool cutoff_accept(const BigInt& r, const CutoffRule& rule);

/// One Euclidean step: larger - floor(b/a) * smaller when the cutoff accepts
/// the ratio, otherwise smaller unchanged. Requires 0 < smaller.proj <= larger.proj
/// (ZeroPivotError when smaller.proj is 0).
TrackedVector reduce2(const TrackedVector& smaller, const TrackedVector& larger, const CutoffRule& rule);

/// As reduce2, also reporting whether the subtraction fired.
TrackedVector reduce2(const TrackedVector& smaller, const TrackedVector& larger, const CutoffRule& rule,
                      bool& fired);

}  // namespace sortreduce
