#include "sortreduce/projection.hpp"

#include <algorithm>

#include "sortreduce/errors.hpp"
#include "sortreduce/primality.hpp"

namespace sortreduce {

Modulus::Modulus(BigInt value) : value_(std::move(value)) {
  if (value_ < 2) throw ConfigError("modulus must be at least 2");
}

bool Modulus::is_prime() const {
  if (is_prime_) return *is_prime_;
  return is_probable_prime(value_);
}

Modulus Modulus::with_primality() const {
  Modulus m = *this;
  m.is_prime_ = is_prime();
  return m;
}

DualCodeword::DualCodeword(std::vector<BigInt> entries, Modulus modulus)
    : entries_(std::move(entries)), modulus_(std::move(modulus)) {
  if (entries_.empty()) throw DimensionError("codeword has no entries");
  bool nonzero = false;
  for (const BigInt& e : entries_) {
    if (e < 0 || e >= modulus_.value()) throw ConfigError("codeword entry outside [0, P)");
    nonzero = nonzero || e != 0;
  }
  if (!nonzero) throw ConfigError("codeword is zero modulo P");
}

DualCodeword DualCodeword::reduced(std::vector<BigInt> entries, Modulus modulus) {
  for (BigInt& e : entries) e = canonical_mod(e, modulus.value());
  return DualCodeword(std::move(entries), std::move(modulus));
}

DualCodeword DualCodeword::multiplied(const BigInt& q) const {
  std::vector<BigInt> out(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) out[i] = canonical_mod(q * entries_[i], P());
  return DualCodeword(std::move(out), modulus_);
}

BigInt canonical_mod(const BigInt& x, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt pi0(const IntVector& w, const DualCodeword& v) {
  if (w.dim() != v.dim()) throw DimensionError("vector and codeword dimensions differ");
  return w.dot(v.entries());
}

BigInt pi(const IntVector& w, const DualCodeword& v) { return canonical_mod(pi0(w, v), v.P()); }

TrackedVector TrackedVector::track(IntVector vec, const DualCodeword& v, ProjKind kind) {
  TrackedVector t{std::move(vec), 0, kind};
  t.proj = t.recompute(v);
  return t;
}

BigInt TrackedVector::recompute(const DualCodeword& v) const {
  return kind == ProjKind::raw ? pi0(vec, v) : pi(vec, v);
}

CutoffRule::CutoffRule(std::uint64_t exponent_denominator, BigInt P)
    : n_(exponent_denominator), P_(std::move(P)) {
  if (n_ == 0) throw ConfigError("cutoff exponent denominator must be positive");
  if (P_ < 1) throw ConfigError("cutoff modulus must be positive");
  // mpz_root takes an unsigned long; any n beyond the bit length gives root 1.
  const auto bits = bit_length(P_);
  if (n_ >= bits) {
    root_ = 1;
  } else {
    mpz_root(root_.get_mpz_t(), P_.get_mpz_t(), static_cast<unsigned long>(n_));
  }
}

bool cutoff_accept(const BigInt& r, const CutoffRule& rule) { return rule.accepts(r); }

TrackedVector reduce2(const TrackedVector& smaller, const TrackedVector& larger, const CutoffRule& rule,
                      bool& fired) {
  if (smaller.proj == 0) throw ZeroPivotError("reduction against a zero projection");
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), larger.proj.get_mpz_t(), smaller.proj.get_mpz_t());
  if (!rule.accepts(r)) {
    fired = false;
    return smaller;
  }
  fired = true;
  TrackedVector out{sub_scaled(larger.vec, r, smaller.vec), larger.proj - r * smaller.proj, larger.kind};
  if (out.kind == ProjKind::mod_p && (out.proj < 0 || out.proj >= rule.P())) {
    out.proj = canonical_mod(out.proj, rule.P());
  }
  return out;
}

TrackedVector reduce2(const TrackedVector& smaller, const TrackedVector& larger, const CutoffRule& rule) {
  bool fired = false;
  return reduce2(smaller, larger, rule, fired);
}

}  // namespace sortreduce
