#include "sortreduce/codim.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <stdexcept>
#include <thread>

#include "sortreduce/errors.hpp"
#include "sortreduce/lattice_tools.hpp"

namespace sortreduce {

DualCode::DualCode(std::vector<DualCodeword> codewords, bool checked)
    : codewords_(std::move(codewords)), rank_checked_(checked) {
  if (codewords_.empty()) throw ConfigError("dual code needs at least one codeword");
  for (const DualCodeword& c : codewords_) {
    if (c.dim() != codewords_.front().dim()) throw DimensionError("codewords differ in dimension");
    if (c.P() != codewords_.front().P()) throw ConfigError("codewords use different moduli");
  }
}

DualCode DualCode::checked(std::vector<DualCodeword> codewords) {
  DualCode code(std::move(codewords), false);
  if (!code[0].modulus().is_prime()) throw ConfigError("dual code rank check needs a prime modulus");
  Matrix m;
  for (const DualCodeword& c : code.codewords_) m.emplace_back(c.entries().begin(), c.entries().end());
  const std::size_t rank = rank_mod(m, code[0].P());
  if (rank != code.k()) {
    throw ConfigError("codewords are linearly dependent mod P (rank " + std::to_string(rank) + " of " +
                      std::to_string(code.k()) + "); every harvested vector would project to zero");
  }
  code.rank_checked_ = true;
  return code;
}

DualCode DualCode::unchecked(std::vector<DualCodeword> codewords) { return DualCode(std::move(codewords), false); }

namespace {

// Runs job(i) for i in [0, count) on a small pool; results are gathered by index.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  // lowest index first, independent of scheduling
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<IntVector> harvest(const DualCodeword& v, std::size_t count, std::span<const BigInt> q_schedule,
                               unsigned threads, const std::function<RunReport(const BigInt&)>& run_one) {
  if (q_schedule.size() < count) throw ConfigError("q schedule is shorter than the harvest count");
  std::vector<IntVector> out(count);
  parallel_for(count, threads, [&](std::size_t i) {
    const BigInt& q = q_schedule[i];
    RunReport rep = run_one(q);
    if (rep.status != RunStatus::found) {
      throw HarvestError(q, "harvest run with q = " + to_decimal(q) + " ended " + to_string(rep.status));
    }
    if (pi(rep.output_vectors.front(), v) != 0) throw std::logic_error("harvested vector is not orthogonal");
    out[i] = std::move(rep.output_vectors.front());
  });
  return out;
}

void assert_orthogonal(const std::vector<IntVector>& vectors, std::span<const DualCodeword> codewords) {
  for (const IntVector& w : vectors) {
    for (const DualCodeword& c : codewords) {
      if (pi(w, c) != 0) throw std::logic_error("level output violates an earlier constraint");
    }
  }
}

std::vector<BigInt> default_schedule(std::size_t d) {
  std::vector<BigInt> q(d);
  for (std::size_t i = 0; i < d; ++i) q[i] = static_cast<unsigned long>(i + 1);
  return q;
}

}  // namespace

std::vector<IntVector> harvest_codim1(const DualCodeword& v, std::size_t count, std::span<const BigInt> q_schedule,
                                      const SolverConfig& config, unsigned threads) {
  return harvest(v, count, q_schedule, threads, [&](const BigInt& q) {
    SolverConfig c = config;
    c.q = q;
    return run_q_multiplied(v, q, v.dim(), c);
  });
}

std::vector<IntVector> harvest_level(const DualCodeword& v, const std::vector<IntVector>& input, std::size_t count,
                                     std::span<const BigInt> q_schedule, const SolverConfig& config,
                                     unsigned threads) {
  return harvest(v, count, q_schedule, threads, [&](const BigInt& q) {
    SolverConfig c = config;
    c.q = q;
    return run_q_multiplied(v, q, input, c);
  });
}

CodimResult run_codimk(const DualCode& code, const CodimConfig& config) {
  if (!code.rank_checked()) throw ConfigError("dual code has not been rank-checked");
  const std::size_t d = code.dim();
  const std::size_t k = code.k();
  if (k >= 2 && static_cast<double>(k) > config.max_k_ratio * static_cast<double>(d)) {
    throw ConfigError("co-dimension k = " + std::to_string(k) + " is too large for d = " + std::to_string(d));
  }
  const std::vector<BigInt> schedule = config.q_schedule.empty() ? default_schedule(d) : config.q_schedule;

  SolverConfig first = SolverConfig::q_multiplied(1);
  first.max_iterations = config.max_iterations;
  first.seed = config.seed;
  SolverConfig level = SolverConfig::codim_level();
  level.max_iterations = config.max_iterations;
  level.seed = config.seed;

  CodimResult result;
  if (k == 1) {
    first.q = config.final_q;
    result.report = run_q_multiplied(code[0], config.final_q, d, first);
    return result;
  }

  std::vector<IntVector> list = harvest_codim1(code[0], d, schedule, first, config.threads);
  assert_orthogonal(list, code.codewords().first(1));
  result.levels.push_back(list);
  for (std::size_t m = 1; m + 1 < k; ++m) {
    list = harvest_level(code[m], list, d, schedule, level, config.threads);
    assert_orthogonal(list, code.codewords().first(m + 1));
    result.levels.push_back(list);
  }
  level.q = config.final_q;
  result.report = run_q_multiplied(code[k - 1], config.final_q, std::move(list), level);
  assert_orthogonal(result.report.output_vectors, code.codewords());
  return result;
}

CodimResult run_codim2(const DualCode& code, const CodimConfig& config) {
  if (code.k() != 2) throw ConfigError("run_codim2 needs exactly two codewords");
  return run_codimk(code, config);
}

}  // namespace sortreduce
