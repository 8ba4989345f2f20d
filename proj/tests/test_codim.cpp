#include <gtest/gtest.h>

#include "helpers.hpp"
#include "sortreduce/codim.hpp"
#include "sortreduce/errors.hpp"
#include "sortreduce/input_sets.hpp"
#include "sortreduce/primality.hpp"

using namespace sortreduce;
using namespace sortreduce::testing;

namespace {

Modulus prime_near(const char* literal) {
  return Modulus(next_prime(parse_integer_literal(literal))).with_primality();
}

}  // namespace

TEST(DualCode, RankCheckRejectsCollinearCodewords) {
  const Modulus M = prime_near("1000000");
  const DualCodeword v1 = sample_dual_uniform(20, M, 1);
  EXPECT_THROW(DualCode::checked({v1, v1.multiplied(3)}), ConfigError);
  EXPECT_NO_THROW(DualCode::checked({v1, sample_dual_uniform(20, M, 2)}));
}

TEST(DualCode, SharedModulusAndDimension) {
  const DualCodeword a(big({1, 2, 3}), Modulus(BigInt(7)));
  const DualCodeword b(big({1, 2, 3}), Modulus(BigInt(11)));
  const DualCodeword c(big({1, 2}), Modulus(BigInt(7)));
  EXPECT_THROW(DualCode::checked({a, b}), ConfigError);
  EXPECT_THROW(DualCode::checked({a, c}), DimensionError);
  const DualCodeword composite(big({1, 2, 3}), Modulus(BigInt(15)));
  EXPECT_THROW(DualCode::checked({composite}), ConfigError);
}

TEST(Codim, UncheckedCodeIsRefused) {
  const Modulus M = prime_near("10^6");
  const auto code = DualCode::unchecked({sample_dual_uniform(50, M, 1), sample_dual_uniform(50, M, 2)});
  EXPECT_THROW(run_codim2(code), ConfigError);
}

TEST(Codim, HarvestOneMatchesSimple) {
  const Modulus M = prime_near("10^9");
  const DualCodeword v = sample_dual_uniform(100, M, 4);
  const std::vector<BigInt> schedule{1};
  const auto harvested = harvest_codim1(v, 1, schedule, SolverConfig::q_multiplied(1), 1);
  const RunReport simple = run_simple(v, 100, SolverConfig::simple());
  ASSERT_EQ(harvested.size(), 1u);
  EXPECT_EQ(harvested[0], simple.output_vectors.front());
}

TEST(Codim, HarvestFailureNamesTheQ) {
  const Modulus M = prime_near("10^30");
  const DualCodeword v = sample_dual_uniform(100, M, 4);
  SolverConfig cfg = SolverConfig::q_multiplied(1);
  cfg.max_iterations = 1;
  const std::vector<BigInt> schedule{5, 6};
  try {
    harvest_codim1(v, 2, schedule, cfg, 1);
    FAIL() << "expected HarvestError";
  } catch (const HarvestError& e) {
    EXPECT_EQ(e.q(), 5);
  }
}

TEST(Codim, ThreeLevelsAreOrthogonalToEveryCodeword) {
  const Modulus M = prime_near("10^6");
  std::vector<DualCodeword> cws;
  for (std::uint64_t s = 1; s <= 3; ++s) cws.push_back(sample_dual_uniform(50, M, 10 + s));
  CodimConfig cfg;
  cfg.threads = 1;
  const CodimResult res = run_codimk(DualCode::checked(cws), cfg);
  ASSERT_EQ(res.report.status, RunStatus::found);
  ASSERT_EQ(res.levels.size(), 2u);
  for (const IntVector& w : res.levels[0]) EXPECT_EQ(pi(w, cws[0]), 0);
  for (const IntVector& w : res.levels[1]) {
    EXPECT_EQ(pi(w, cws[0]), 0);
    EXPECT_EQ(pi(w, cws[1]), 0);
  }
  for (const IntVector& w : res.report.output_vectors) {
    EXPECT_FALSE(w.is_zero());
    for (const auto& c : cws) EXPECT_EQ(pi(w, c), 0);
  }
}

TEST(Codim, KEqualsOneIsAQRun) {
  const Modulus M = prime_near("10^8");
  const DualCodeword v = sample_dual_uniform(80, M, 3);
  CodimConfig cfg;
  cfg.final_q = 7;
  const RunReport a = run_codimk(DualCode::checked({v}), cfg).report;
  const RunReport b = run_q_multiplied(v, 7, 80, SolverConfig::q_multiplied(7));
  EXPECT_EQ(a.output_vectors, b.output_vectors);
}

TEST(Codim, TwoIsTheSameAsGeneralK) {
  const Modulus M = prime_near("10^8");
  const auto code = DualCode::checked({sample_dual_uniform(60, M, 1), sample_dual_uniform(60, M, 2)});
  CodimConfig cfg;
  cfg.threads = 1;
  EXPECT_EQ(run_codim2(code, cfg).report, run_codimk(code, cfg).report);
}

TEST(Codim, ThreadCountDoesNotChangeResults) {
  const Modulus M = prime_near("10^8");
  const auto code = DualCode::checked({sample_dual_uniform(60, M, 5), sample_dual_uniform(60, M, 6)});
  CodimConfig one, four;
  one.threads = 1;
  four.threads = 4;
  const CodimResult a = run_codim2(code, one);
  const CodimResult b = run_codim2(code, four);
  EXPECT_EQ(a.report, b.report);
  EXPECT_EQ(a.levels, b.levels);
}

TEST(Codim, TooLargeKIsRejected) {
  const Modulus M = prime_near("10^6");
  std::vector<DualCodeword> cws;
  for (std::uint64_t s = 1; s <= 3; ++s) cws.push_back(sample_dual_uniform(20, M, s));
  EXPECT_THROW(run_codimk(DualCode::checked(cws)), ConfigError);
  CodimConfig loose;
  loose.max_k_ratio = 0.5;
  loose.threads = 1;
  try {
    run_codimk(DualCode::checked(cws), loose);
  } catch (const HarvestError&) {
    // the size guard passed; an unlucky harvest is not what is tested here
  }
}
