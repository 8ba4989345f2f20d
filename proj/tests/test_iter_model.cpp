#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "sortreduce/errors.hpp"
#include "sortreduce/iter_model.hpp"

using namespace sortreduce;

namespace {

using Ref = boost::multiprecision::cpp_bin_float_50;

double rel(const Real& a, const Ref& b) {
  const Ref x(a.str(60));
  return abs((x - b) / b).convert_to<double>();
}

double num(const Real& x) { return x.convert_to<double>(); }

}  // namespace

TEST(Fit, ReproducesEveryPredictedIteration) {
  const auto& grid = reference_iteration_grid();
  ASSERT_EQ(grid.size(), 42u);
  for (const ReferenceRun& r : grid) {
    ASSERT_NE(r.predicted, 0u);
    EXPECT_EQ(predicted_iterations(Real(r.P), Real(r.d)), r.predicted) << r.P << " d=" << r.d;
  }
}

TEST(Fit, CoefficientAndRegime) {
  EXPECT_NEAR(num(fit_coefficient(Real(1000))), 0.2 + 3 / std::log(std::sqrt(70000.0)), 1e-12);
  EXPECT_THROW(n0_opt_fit(Real(100), Real(1000)), RegimeError);
  EXPECT_EQ(predicted_iterations(Real("3.13e102"), Real(1000)), 94u);
}

TEST(Fit, LengthIntervalModes) {
  const auto [lo, hi] = length_bound_interval(Real("3.13e102"), Real(1000), BoundMode::fit);
  EXPECT_NEAR(num(log2(lo)), 47.0, 1e-9);
  EXPECT_NEAR(num(log2(hi)), 94.0, 1e-9);
  const auto [wl, wh] = length_bound_interval(Real("1e50"), Real(1000), BoundMode::worst_exponent);
  EXPECT_LT(wl, wh);
  EXPECT_NEAR(num(wh / (wl * wl)), 1.0, 1e-9);  // 2 x^2 / (sqrt2 x)^2
}

TEST(Recursion, KnownCounts) {
  EXPECT_EQ(recursion_count(Real("1e102"), Real(1000)), 109u);
  EXPECT_EQ(recursion_count(Real(5), Real(5)), 2u);
  EXPECT_EQ(recursion_count(exp(Real(1)), Real(10)), 1u);
  EXPECT_THROW(recursion_count(Real("1e102"), Real(100)), DivergenceError);
}

TEST(WorstCase, ClosedForms) {
  const Real e10 = exp(Real(10));
  EXPECT_NEAR(num(n0_worst(e10, 20 * exp(Real(1)))), 10.0, 1e-30);
  EXPECT_THROW(n0_worst(Real(1000), 2 * log(Real(1000))), RegimeError);
  EXPECT_NEAR(num(n0_worst(Real("1e102"), Real(1000))), 310.83, 0.01);
  EXPECT_NEAR(num(n0_worst_improved(Real(500), Real(1000))), 0.0, 1e-40);
  EXPECT_GT(n0_worst_improved(Real("1e30"), Real(1000)), n0_worst_improved(Real("1e30"), Real(2000)));
  EXPECT_NEAR(num(n0_avg_coarse(Real("1e102"), Real(1000), false)), 162.11, 0.01);
  EXPECT_LT(n0_avg_coarse(Real("1e102"), Real(1000)), n0_avg_coarse(Real("1e102"), Real(1000), false));
  EXPECT_THROW(n0_avg_coarse(Real("1e102"), Real(200)), RegimeError);
}

TEST(WorstCase, CorrectedApproachesTwiceTheBound) {
  const Real P("1e20");
  const Real x = n0_worst(P, Real(10000));
  EXPECT_GT(n0_effective_corrected(P, Real(10000)), 2 * x);
  const Real big_d("1e30");
  EXPECT_NEAR(num(n0_effective_corrected(P, big_d) / (2 * n0_worst(P, big_d))), 1.0, 1e-20);
  EXPECT_THROW(n0_effective_corrected(Real("1e150"), Real(1000)), RegimeError);
}

TEST(PlugIn, IndependentEvaluationAgrees) {
  const Ref P("1e20"), d(10000);
  const Ref worst = log(P) / log(d / (2 * log(P)));
  EXPECT_LT(rel(n0_worst(Real("1e20"), Real(10000)), worst), 1e-20);
  const Ref c = Ref("0.2") + 3 / log(sqrt(70 * d));
  const Ref fit = exp(c * pow(log(P / d), Ref("0.334")));
  EXPECT_LT(rel(n0_opt_fit(Real("1e20"), Real(10000)), fit), 1e-20);
  const Ref corrected = worst / (Ref("0.5") - worst / d);
  EXPECT_LT(rel(n0_effective_corrected(Real("1e20"), Real(10000)), corrected), 1e-20);
}

TEST(General, IterationsAndLengths) {
  EXPECT_NEAR(num(general_iterations(pow(Real(2), 60), pow(Real(2), 10))), 6.0, 1e-30);
  EXPECT_NEAR(num(general_iterations(Real("1e120"), Real("1e6"))), 20.0, 1e-30);
  EXPECT_NEAR(num(predict_general_length(Real("1.86e120"), Real("8e6"), sqrt(Real(16)))), 1185.5, 0.5);
  EXPECT_NEAR(num(predict_general_length(Real("1.81e126"), Real("1.92e7"), sqrt(Real(16)))), 1150.22, 0.5);
  EXPECT_NEAR(num(log2(required_input_size(Real("1e120"), pow(Real(2), Real(log2(Real("1e120")) / 40))))), 20.0,
              1e-20);
}

TEST(LengthBounds, FromIterationsAndCutoff) {
  const auto [l0, h0] = predict_length_bounds(0, Real(3), BigInt(1));
  EXPECT_EQ(l0, 3);
  EXPECT_EQ(h0, 3);
  const auto [lo, hi] = predict_length_bounds(53, Real(1), BigInt(1));
  EXPECT_NEAR(num(lo), 9.49e7, 0.01e7);
  EXPECT_NEAR(num(hi), 9.01e15, 0.01e15);
  const auto [l19, h19] = predict_length_bounds(19, Real(4), BigInt(1));
  EXPECT_NEAR(num(l19), 2896.31, 0.01);
  EXPECT_NEAR(num(h19 / l19), std::pow(2.0, 9.5), 1e-6);
  const auto [l4, h4] = predict_length_bounds(5, Real(1), BigInt(1), 4);
  EXPECT_NEAR(num(h4), 1024.0, 1e-30);
  EXPECT_EQ(predict_length_bounds(5, Real(1), BigInt(7), 4).second, pow(Real(8), 5));
}

TEST(PredictAll, LeavesOutOfRegimeModelsEmpty) {
  const IterPrediction p = predict_all(Real("1e102"), Real(1000));
  EXPECT_TRUE(p.n0_worst.has_value());
  EXPECT_FALSE(predict_all(Real("1e150"), Real(1000)).n0_effective_corrected.has_value());
  EXPECT_EQ(p.n_recursion, 109u);
  EXPECT_EQ(p.predicted_iterations, 94u);
  const IterPrediction q = predict_all(Real(50), Real(1000));
  EXPECT_FALSE(q.n0_opt_fit.has_value());
  EXPECT_FALSE(q.predicted_iterations.has_value());
}

TEST(ReferenceTables, LengthTablesAreConsistent) {
  const auto& rows = reference_length_tables();
  ASSERT_FALSE(rows.empty());
  for (const ReferenceRun& r : rows) {
    EXPECT_TRUE(r.d == 1000 || r.d == 2000 || r.d == 4000 || r.d == 8000);
    EXPECT_GE(r.length, 1.0);
  }
}
