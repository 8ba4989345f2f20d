#include "sortreduce/iter_model.hpp"

#include "sortreduce/errors.hpp"

namespace sortreduce {
namespace {

using boost::multiprecision::ceil;
using boost::multiprecision::exp;
using boost::multiprecision::log;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

const Real& ln2() {
  static const Real value = log(Real(2));
  return value;
}

Real log2(const Real& x) { return Real(log(x) / ln2()); }

// ln P and ln(d / (scale ln P)), after checking the regime d > scale ln P.
std::pair<Real, Real> regime_logs(const Real& P, const Real& d, int scale, const char* what) {
  if (P <= 1) throw RegimeError(std::string(what) + ": P must exceed 1");
  Real lnP = log(P);
  Real ratio = d / (scale * lnP);
  if (ratio <= 1) throw RegimeError(std::string(what) + ": requires d > " + std::to_string(scale) + " ln P");
  return {lnP, Real(log(ratio))};
}

}  // namespace

std::uint64_t recursion_count(const Real& P, const Real& d) {
  if (d <= 0) throw RegimeError("recursion_count: d must be positive");
  Real p = P;
  std::uint64_t steps = 0;
  while (p > 1) {
    Real next = p * log(p) / d;
    if (next >= p) throw DivergenceError("recursion does not contract: ln P_k >= d");
    p = next;
    ++steps;
  }
  return steps;
}

Real n0_worst(const Real& P, const Real& d) {
  auto [lnP, denom] = regime_logs(P, d, 2, "n0_worst");
  return lnP / denom;
}

Real n0_worst_improved(const Real& P, const Real& d) {
  auto [lnP, denom] = regime_logs(P, d, 2, "n0_worst_improved");
  return Real(log(2 * P / d)) / denom;
}

Real n0_effective_corrected(const Real& P, const Real& d) {
  Real x = n0_worst(P, d);
  Real denom = Real(0.5) - x / d;
  if (denom <= 0) throw RegimeError("n0_effective_corrected: correction denominator is not positive");
  return x / denom;
}

Real n0_avg_coarse(const Real& P, const Real& d, bool refined) {
  auto [lnP, denom] = regime_logs(P, d, 1, "n0_avg_coarse");
  Real num = refined ? Real(log(2 * P / d)) : lnP;
  return num / denom;
}

Real fit_coefficient(const Real& d) {
  if (d <= 0) throw RegimeError("fit coefficient: d must be positive");
  return Real("0.2") + 3 / Real(log(sqrt(70 * d)));
}

Real n0_opt_fit(const Real& P, const Real& d) {
  if (P <= d) throw RegimeError("n0_opt_fit: requires P > d");
  return exp(fit_coefficient(d) * pow(Real(log(P / d)), Real("0.334")));
}

std::uint64_t predicted_iterations(const Real& P, const Real& d) {
  return static_cast<std::uint64_t>(ceil(n0_opt_fit(P, d)).convert_to<unsigned long long>()) + 1;
}

std::pair<Real, Real> length_bound_interval(const Real& P, const Real& d, BoundMode mode) {
  if (mode == BoundMode::fit) {
    Real m = static_cast<unsigned long long>(predicted_iterations(P, d));
    return {pow(sqrt(Real(2)), m), pow(Real(2), m)};
  }
  auto [lnP, unused] = regime_logs(P, d, 1, "length_bound_interval");
  (void)unused;
  Real l = log2(d / lnP);
  Real base = 2 * P / d;
  return {sqrt(Real(2)) * pow(base, 1 / (2 * l)), 2 * pow(base, 1 / l)};
}

Real general_iterations(const Real& P, const Real& d_star) {
  if (d_star < 2) throw RegimeError("general_iterations: input size must be at least 2");
  return log2(P) / log2(d_star);
}

std::pair<Real, Real> predict_length_bounds(std::uint64_t iterations, const Real& L0, const BigInt& cutoff_root,
                                            std::size_t max_arity) {
  Real n = static_cast<unsigned long long>(iterations);
  BigInt factor = cutoff_root + 1;
  if (factor < max_arity) factor = static_cast<unsigned long>(max_arity);
  return {L0 * pow(sqrt(Real(2)), n), L0 * pow(to_real(factor), n)};
}

Real predict_general_length(const Real& P, const Real& d_star, const Real& L0) {
  if (d_star < 4) throw RegimeError("predict_general_length: input size must be at least 4");
  return L0 / sqrt(Real(2)) * pow(P, 1 / (2 * log2(d_star)));
}

Real required_input_size(const Real& P, const Real& L) {
  if (L <= 1) throw RegimeError("required_input_size: target length must exceed 1");
  return pow(Real(2), log2(P) / (2 * log2(L)));
}

IterPrediction predict_all(const Real& P, const Real& d) {
  IterPrediction out;
  auto attempt = [](auto&& f) -> decltype(std::optional{f()}) {
    try {
      return f();
    } catch (const RegimeError&) {
      return std::nullopt;
    } catch (const DivergenceError&) {
      return std::nullopt;
    }
  };
  out.n0_worst = attempt([&] { return n0_worst(P, d); });
  out.n0_worst_improved = attempt([&] { return n0_worst_improved(P, d); });
  out.n0_effective_corrected = attempt([&] { return n0_effective_corrected(P, d); });
  out.n0_avg_coarse = attempt([&] { return n0_avg_coarse(P, d, true); });
  out.n0_avg_coarse_unrefined = attempt([&] { return n0_avg_coarse(P, d, false); });
  out.n_recursion = attempt([&] { return recursion_count(P, d); });
  out.n0_opt_fit = attempt([&] { return n0_opt_fit(P, d); });
  out.predicted_iterations = attempt([&] { return predicted_iterations(P, d); });
  return out;
}

const std::vector<ReferenceRun>& reference_iteration_grid() {
  static const std::vector<ReferenceRun> grid = {
      {"3.13E+102", 1000, 53, 0, 94},  {"2.73E+89", 1000, 44, 0, 77},   {"1.42E+79", 1000, 38, 0, 65},
      {"2.15E+69", 1000, 32, 0, 54},   {"1.99E+59", 1000, 26, 0, 44},   {"5.30E+49", 1000, 21, 0, 35},
      {"2.04E+49", 1000, 21, 0, 35},   {"6.19E+24", 1000, 9, 0, 17},    {"2.19E+12", 1000, 4, 0, 9},
      {"3.13E+102", 2000, 44, 0, 78},  {"2.728E+89", 2000, 37, 0, 64},  {"9.38E+79", 2000, 32, 0, 55},
      {"2.154E+69", 2000, 26, 0, 45},  {"1.987E+59", 2000, 22, 0, 37},  {"5.303E+49", 2000, 18, 0, 30},
      {"5.303E+49", 2000, 18, 0, 30},  {"2.044E+49", 2000, 18, 0, 30},  {"2.044E+49", 2000, 18, 0, 30},
      {"8.721E+34", 2000, 12, 0, 21},  {"6.193E+24", 2000, 8, 0, 15},   {"2.187E+12", 2000, 4, 0, 9},
      {"3.13E+102", 4000, 38, 0, 65},  {"2.728E+89", 4000, 32, 0, 54},  {"9.38E+79", 4000, 28, 0, 47},
      {"2.154E+69", 4000, 23, 0, 39},  {"1.987E+59", 4000, 19, 0, 32},  {"5.303E+49", 4000, 16, 0, 27},
      {"2.044E+49", 4000, 16, 0, 26},  {"8.721E+34", 4000, 11, 0, 18},  {"6.193E+24", 4000, 7, 0, 14},
      {"2.187E+12", 4000, 3, 0, 8},    {"3.13E+102", 8000, 33, 0, 56},  {"2.73E+89", 8000, 28, 0, 47},
      {"9.38E+79", 8000, 25, 0, 41},   {"2.15E+69", 8000, 21, 0, 34},   {"1.99E+59", 8000, 18, 0, 29},
      {"5.30E+49", 8000, 14, 0, 24},   {"5.30E+49", 8000, 14, 0, 24},   {"2.04E+49", 8000, 14, 0, 23},
      {"8.72E+34", 8000, 10, 0, 17},   {"6.19E+24", 8000, 6, 0, 12},    {"2.187E+12", 8000, 3, 0, 7},
  };
  return grid;
}

const std::vector<ReferenceRun>& reference_length_tables() {
  static const std::vector<ReferenceRun> rows = {
      {"3.13E+102", 1000, 53, 4.94e7, 0},   {"2.73E+89", 1000, 44, 5.85e6, 0},   {"1.42E+79", 1000, 38, 7.02e5, 0},
      {"2.15E+69", 1000, 32, 7.29e4, 0},    {"1.99E+59", 1000, 26, 9.89e3, 0},   {"5.30E+49", 1000, 21, 1375.41, 0},
      {"2.04E+49", 1000, 21, 1352.33, 0},   {"6.19E+24", 1000, 9, 21.7256, 0},   {"2.19E+12", 1000, 4, 4, 0},
      {"3.13E+102", 2000, 44, 4.47e6, 0},   {"2.73E+89", 2000, 37, 3.97e5, 0},   {"9.38E+79", 2000, 32, 5.98e4, 0},
      {"2.15E+69", 2000, 26, 8.57e3, 0},    {"1.99E+59", 2000, 22, 1.96e3, 0},   {"5.30E+49", 2000, 18, 527, 0},
      {"5.30E+49", 2000, 18, 495.971, 0},   {"2.04E+49", 2000, 18, 503.914, 0},  {"2.04E+49", 2000, 18, 475.588, 0},
      {"8.72E+34", 2000, 12, 63.7181, 0},   {"6.19E+24", 2000, 8, 16, 0},        {"2.19E+12", 2000, 4, 4, 0},
      {"3.13E+102", 4000, 38, 5.35e5, 0},   {"2.73E+89", 4000, 32, 7.08e4, 0},   {"9.38E+79", 4000, 28, 1.82e4, 0},
      {"2.15E+69", 4000, 23, 2.99e3, 0},    {"1.99E+59", 4000, 19, 727, 0},      {"5.30E+49", 4000, 16, 264.348, 0},
      {"2.04E+49", 4000, 16, 262.189, 0},   {"8.72E+34", 4000, 11, 47.0106, 0},  {"6.19E+24", 4000, 7, 11.3137, 0},
      {"2.19E+12", 4000, 3, 2.82843, 0},    {"3.13E+102", 8000, 33, 87975.6, 0}, {"2.73E+89", 8000, 28, 16143.9, 0},
      {"9.38E+79", 8000, 25, 5803.37, 0},   {"2.15E+69", 8000, 21, 1332.21, 0},  {"1.99E+59", 8000, 18, 528.774, 0},
      {"5.30E+49", 8000, 14, 130.273, 0},   {"2.04E+49", 8000, 14, 130.599, 0},  {"8.72E+34", 8000, 10, 31.9687, 0},
      {"6.19E+24", 8000, 6, 8.12404, 0},    {"2.19E+12", 8000, 3, 2.82843, 0},
  };
  return rows;
}

}  // namespace sortreduce
