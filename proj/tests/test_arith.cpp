#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "helpers.hpp"
#include "sortreduce/errors.hpp"
#include "sortreduce/primality.hpp"
#include "sortreduce/projection.hpp"

using namespace sortreduce;
using namespace sortreduce::testing;

// ---- integer literals and formatting

TEST(BigIntLiteral, AcceptsDecimalScientificAndPowers) {
  EXPECT_EQ(parse_integer_literal("1000003"), BigInt(1000003));
  EXPECT_EQ(parse_integer_literal("2.19e12"), BigInt("2190000000000"));
  EXPECT_EQ(parse_integer_literal("2.187E+12"), BigInt("2187000000000"));
  EXPECT_EQ(parse_integer_literal("10^12"), BigInt("1000000000000"));
  EXPECT_EQ(parse_integer_literal("-42"), BigInt(-42));
  EXPECT_EQ(parse_integer_literal(" 7 "), BigInt(7));
  EXPECT_EQ(bit_length(parse_integer_literal("3.13E+102")), 341u);
}

TEST(BigIntLiteral, RejectsNonIntegers) {
  EXPECT_THROW(parse_integer_literal("1.5"), FormatError);
  EXPECT_THROW(parse_integer_literal("2.191e2"), FormatError);
  EXPECT_THROW(parse_integer_literal("abc"), FormatError);
  EXPECT_THROW(parse_integer_literal(""), FormatError);
  EXPECT_THROW(parse_integer_literal("10^-2"), FormatError);
}

TEST(BigIntFormat, SixSignificantDigits) {
  EXPECT_EQ(format_significant(Real("1651.3123"), 6), "1651.31");
  EXPECT_EQ(format_significant(Real(4), 6), "4");
  EXPECT_EQ(format_significant(boost::multiprecision::sqrt(Real(8)), 6), "2.82843");
  const std::string big = format_significant(Real("94906265.62"), 3);
  EXPECT_EQ(big, "9.49e+07");
}

TEST(BigIntLn, MatchesLibmOnModerateValues) {
  EXPECT_NEAR(ln(BigInt(1000)).convert_to<double>(), std::log(1000.0), 1e-12);
  EXPECT_NEAR(ln(parse_integer_literal("10^102")).convert_to<double>(), 102 * std::log(10.0), 1e-9);
  EXPECT_EQ(floor_to_integer(Real("7.999")), BigInt(7));
}

// ---- vectors

TEST(IntVector, BasicArithmetic) {
  const IntVector a = vec({1, 0, -2});
  const IntVector b = vec({0, 3, 1});
  EXPECT_EQ(a + b, vec({1, 3, -1}));
  EXPECT_EQ(a - b, vec({1, -3, -3}));
  EXPECT_EQ(-a, vec({-1, 0, 2}));
  EXPECT_EQ(sub_scaled(a, BigInt(2), b), vec({1, -6, -4}));
  EXPECT_EQ(a.norm2(), BigInt(5));
  EXPECT_EQ(a.support_size(), 2u);
  EXPECT_TRUE(IntVector(3).is_zero());
  EXPECT_EQ(IntVector::unit(3, 1), vec({0, 1, 0}));
  EXPECT_EQ(a.dot(big({5, 7, 11})), BigInt(-17));
}

TEST(IntVector, NegationIsAnInvolution) {
  const IntVector a = vec({4, -1, 0, 9});
  EXPECT_EQ(-(-a), a);
  EXPECT_TRUE((a + (-a)).is_zero());
}

TEST(IntVector, OverflowSwitchesToWideAndBack) {
  const std::int64_t big64 = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> raw{big64, 1};
  const IntVector a = IntVector::from_values(std::span<const std::int64_t>(raw));
  const IntVector sum = a + a;
  EXPECT_FALSE(sum.is_narrow());
  EXPECT_EQ(sum.at(0), BigInt(big64) * 2);
  const IntVector back = sum - a;
  EXPECT_TRUE(back.is_narrow());
  EXPECT_EQ(back, a);
  EXPECT_EQ(a.norm2(), BigInt(big64) * big64 + 1);
}

TEST(IntVector, DimensionMismatchThrows) {
  EXPECT_THROW(vec({1, 2}) + vec({1, 2, 3}), DimensionError);
  EXPECT_THROW(vec({1, 2}).dot(big({1})), DimensionError);
}

// ---- primality

TEST(Primality, KnownValues) {
  EXPECT_TRUE(is_probable_prime(BigInt(2)));
  EXPECT_TRUE(is_probable_prime(BigInt(1000003)));
  EXPECT_FALSE(is_probable_prime(BigInt(561)));  // Carmichael
  EXPECT_FALSE(is_probable_prime(BigInt(1)));
  EXPECT_TRUE(is_probable_prime(BigInt("27064032706411")));
  BigInt m127 = (BigInt(1) << 127) - 1;
  EXPECT_TRUE(is_probable_prime(m127));
  EXPECT_FALSE(is_probable_prime(m127 * 3));
  EXPECT_FALSE(is_probable_prime(BigInt("3215031751")));  // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_EQ(next_prime(BigInt("1000000000000")), BigInt("1000000000039"));
  EXPECT_EQ(next_prime(BigInt(13)), BigInt(13));
}

// ---- projections

TEST(Projection, Pi0Examples) {
  const DualCodeword v(big({3, 5}), Modulus(BigInt(7)));
  EXPECT_EQ(pi0(vec({1, 1}), v), BigInt(8));
  EXPECT_EQ(pi0(vec({0, 0}), v), BigInt(0));
  EXPECT_EQ(pi0(IntVector::unit(2, 1), v), BigInt(5));
  EXPECT_THROW(pi0(vec({1, 1, 1}), v), DimensionError);
}

TEST(Projection, PiExamples) {
  const DualCodeword v(big({3, 5}), Modulus(BigInt(7)));
  EXPECT_EQ(pi(vec({1, 1}), v), BigInt(1));
  EXPECT_EQ(pi(vec({-1, 0}), v), BigInt(4));
  EXPECT_EQ(pi(vec({5, -3}), v), BigInt(0));
}

TEST(Projection, CodewordInvariants) {
  EXPECT_THROW(Modulus(BigInt(1)), ConfigError);
  EXPECT_THROW(DualCodeword(big({0, 0}), Modulus(BigInt(7))), ConfigError);
  EXPECT_THROW(DualCodeword(big({7, 1}), Modulus(BigInt(7))), ConfigError);
  EXPECT_EQ(DualCodeword::reduced(big({-1, 9}), Modulus(BigInt(7))), DualCodeword(big({6, 2}), Modulus(BigInt(7))));
  const DualCodeword v(big({3, 5}), Modulus(BigInt(7)));
  EXPECT_EQ(v.multiplied(BigInt(3)), DualCodeword(big({2, 1}), Modulus(BigInt(7))));
  EXPECT_FALSE(Modulus(BigInt(15)).is_prime());
  EXPECT_EQ(Modulus(BigInt(13)).with_primality().known_prime(), std::optional<bool>(true));
}

TEST(Projection, PiIsCanonicalReductionOfPi0) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> small(-50, 50);
  for (int trial = 0; trial < 300; ++trial) {
    const BigInt P = 2 + rng() % 100000;
    std::vector<BigInt> entries(6);
    for (auto& e : entries) e = BigInt(static_cast<unsigned long>(rng() % 1000000)) % P;
    entries[0] = 1;
    const DualCodeword v(entries, Modulus(P));
    const IntVector w = vec({small(rng), small(rng), small(rng), small(rng), small(rng), small(rng)});
    const BigInt p = pi(w, v);
    EXPECT_GE(p, 0);
    EXPECT_LT(p, P);
    EXPECT_EQ(p, canonical_mod(pi0(w, v), P));
  }
}

TEST(Projection, Pi0IsLinear) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> small(-9, 9);
  const DualCodeword v(big({17, 4, 99, 1000, 3}), Modulus(BigInt(1009)));
  for (int trial = 0; trial < 200; ++trial) {
    const IntVector w1 = vec({small(rng), small(rng), small(rng), small(rng), small(rng)});
    const IntVector w2 = vec({small(rng), small(rng), small(rng), small(rng), small(rng)});
    const BigInt a = small(rng), b = small(rng);
    const IntVector combo = sub_scaled(sub_scaled(IntVector(5), -a, w1), -b, w2);
    EXPECT_EQ(pi0(combo, v), a * pi0(w1, v) + b * pi0(w2, v));
  }
}

TEST(Cutoff, Examples) {
  EXPECT_TRUE(cutoff_accept(BigInt(1), CutoffRule(50, BigInt(2))));
  EXPECT_FALSE(cutoff_accept(BigInt(2), CutoffRule(10, BigInt(1023))));
  EXPECT_TRUE(cutoff_accept(BigInt(2), CutoffRule(10, BigInt(1024))));
  EXPECT_TRUE(cutoff_accept(BigInt(0), CutoffRule(10, BigInt(5))));
  EXPECT_EQ(CutoffRule(998, parse_integer_literal("2.19e12")).root(), BigInt(1));
  EXPECT_EQ(CutoffRule(2, BigInt(100)).root(), BigInt(10));
  EXPECT_THROW(CutoffRule(0, BigInt(5)), ConfigError);
}

TEST(Cutoff, AgreesWithFloatingPointAwayFromBoundary) {
  std::mt19937_64 rng(99);
  int compared = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const unsigned n = 1 + rng() % 12;
    const BigInt P = BigInt(static_cast<unsigned long>(2 + rng() % 1000000000ULL));
    const BigInt r = static_cast<unsigned long>(rng() % 200);
    const Real root = boost::multiprecision::pow(to_real(P), Real(1) / n);
    const Real rr = to_real(r);
    if (boost::multiprecision::abs(rr - root) <= root * Real("1e-9")) continue;
    ++compared;
    EXPECT_EQ(cutoff_accept(r, CutoffRule(n, P)), rr <= root) << "r=" << r << " n=" << n << " P=" << P;
  }
  EXPECT_GT(compared, 950);
}

TEST(Reduce2, SpecExamples) {
  const BigInt P(1000);
  const DualCodeword v(big({5, 13}), Modulus(P));
  const TrackedVector a = TrackedVector::track(IntVector::unit(2, 0), v, ProjKind::raw);
  const TrackedVector b = TrackedVector::track(IntVector::unit(2, 1), v, ProjKind::raw);

  bool fired = false;
  const TrackedVector r = reduce2(a, b, CutoffRule(1, P), fired);
  EXPECT_TRUE(fired);
  EXPECT_EQ(r.proj, BigInt(3));
  EXPECT_EQ(r.vec, vec({-2, 1}));
  EXPECT_EQ(r.recompute(v), r.proj);

  // 2^4 = 16 > 15: rejected, smaller comes back unchanged
  const DualCodeword v15(big({5, 13}), Modulus(BigInt(15)));
  const TrackedVector a15 = TrackedVector::track(IntVector::unit(2, 0), v15, ProjKind::raw);
  const TrackedVector b15 = TrackedVector::track(IntVector::unit(2, 1), v15, ProjKind::raw);
  const TrackedVector kept = reduce2(a15, b15, CutoffRule(4, BigInt(15)), fired);
  EXPECT_FALSE(fired);
  EXPECT_EQ(kept.vec, a15.vec);
  EXPECT_EQ(kept.proj, a15.proj);
}

TEST(Reduce2, EqualProjectionsGiveZero) {
  const DualCodeword v(big({6, 6}), Modulus(BigInt(11)));
  const TrackedVector a = TrackedVector::track(IntVector::unit(2, 0), v, ProjKind::raw);
  const TrackedVector b = TrackedVector::track(IntVector::unit(2, 1), v, ProjKind::raw);
  const TrackedVector r = reduce2(a, b, CutoffRule(1, BigInt(11)));
  EXPECT_EQ(r.proj, BigInt(0));
  EXPECT_EQ(r.vec, vec({-1, 1}));
}

TEST(Reduce2, ZeroPivotThrows) {
  const DualCodeword v(big({0, 6}), Modulus(BigInt(11)));
  const TrackedVector a = TrackedVector::track(IntVector::unit(2, 0), v, ProjKind::raw);
  const TrackedVector b = TrackedVector::track(IntVector::unit(2, 1), v, ProjKind::raw);
  EXPECT_THROW(reduce2(a, b, CutoffRule(1, BigInt(11))), ZeroPivotError);
}

TEST(Reduce2, MonotoneAndCacheCoherentUnderRandomChains) {
  std::mt19937_64 rng(3);
  const BigInt P("1000000007");
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<BigInt> entries(8);
    for (auto& e : entries) e = BigInt(static_cast<unsigned long>(1 + rng() % 1000000006ULL));
    const DualCodeword v(entries, Modulus(P));
    const ProjKind kind = trial % 2 ? ProjKind::mod_p : ProjKind::raw;
    std::vector<TrackedVector> items;
    for (std::size_t i = 0; i < 8; ++i) items.push_back(TrackedVector::track(IntVector::unit(8, i), v, kind));
    const CutoffRule rule(1, P);  // accepts everything up to P
    for (int step = 0; step < 30; ++step) {
      std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) { return x.proj < y.proj; });
      if (items[0].proj == 0) break;
      const std::size_t i = rng() % 7;
      const TrackedVector out = reduce2(items[i], items[i + 1], rule);
      EXPECT_EQ(out.recompute(v), out.proj);
      if (kind == ProjKind::raw) EXPECT_LT(out.proj, items[i].proj);
      items[i + 1] = out;
    }
  }
}
