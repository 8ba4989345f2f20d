#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sortreduce/codim.hpp"
#include "sortreduce/errors.hpp"
#include "sortreduce/input_sets.hpp"
#include "sortreduce/iter_model.hpp"
#include "sortreduce/lattice_tools.hpp"
#include "sortreduce/primality.hpp"
#include "sortreduce/report_io.hpp"
#include "sortreduce/solver.hpp"

namespace sortreduce::cli {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Substream reserved for drawing a random modulus of a given bit length.
constexpr std::uint64_t kModulusStream = 0xB175ull << 48;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fixed_ms(double ms) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(3);
  s << ms;
  return s.str();
}

BigInt parse_modulus(const std::string& text) {
  BigInt P = parse_integer_literal(text);
  if (P < 2) throw UsageError("modulus must be at least 2");
  return P;
}

// Integers in any literal form, otherwise a decimal real ("2.718281828").
Real parse_real(const std::string& text) {
  try {
    return to_real(parse_integer_literal(text));
  } catch (const FormatError&) {
  }
  try {
    return Real(text);
  } catch (const std::exception&) {
    throw FormatError("'" + text + "' is not a number");
  }
}

BigInt random_modulus_bits(unsigned bits, std::uint64_t seed) {
  if (bits < 3) throw UsageError("--modulus-bits must be at least 3");
  const BigInt top = BigInt(1) << (bits - 1);
  Stream s(seed, kModulusStream);
  BigInt P = next_prime(top + s.below(top));
  // the prime gap may spill past the top; retry from the bottom of the range
  if (bit_length(P) > bits) P = next_prime(top);
  return P;
}

DualCodeword sample_codeword(std::size_t d, const BigInt& P, const std::string& dist, std::uint64_t seed) {
  const Modulus m = Modulus(P).with_primality();
  if (dist == "uniform") return sample_dual_uniform(d, m, seed);
  if (dist == "loguniform") return sample_dual_loguniform(d, m, seed);
  throw UsageError("--dist must be uniform or loguniform");
}

// Codeword i of a generated instance; i = 0 uses the seed itself so a
// co-dimension stack shares its first constraint with the plain run.
std::uint64_t codeword_seed(std::uint64_t seed, std::size_t i) { return i == 0 ? seed : splitmix64(seed) + i; }

std::vector<IntVector> vectors_from_text(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') return parse_vector_list(text);
  // a solve report: take its output vectors
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("report is not valid JSON: ") + e.what());
  }
  if (!j.contains("output_vectors")) throw FormatError("report has no output_vectors");
  std::vector<IntVector> out;
  for (const json& row : j.at("output_vectors")) {
    std::vector<BigInt> values;
    for (const json& x : row) {
      values.push_back(x.is_string() ? parse_integer_literal(x.get<std::string>()) : BigInt(std::to_string(x.get<std::int64_t>())));
    }
    out.push_back(IntVector::from_values(std::span<const BigInt>(values)));
  }
  if (out.empty()) throw FormatError("report contains no output vectors");
  return out;
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file(path, content);
  }
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::size_t dim = 0;
  std::string modulus;
  unsigned modulus_bits = 0;
  bool next_prime_flag = false;
  std::string dist = "uniform";
  std::uint64_t seed = 0;
  std::string out_path;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  if (a.modulus.empty() == (a.modulus_bits == 0)) throw UsageError("give exactly one of --modulus and --modulus-bits");
  if (a.dim < 1) throw UsageError("--dim must be positive");
  BigInt P = a.modulus_bits ? random_modulus_bits(a.modulus_bits, a.seed) : parse_modulus(a.modulus);
  if (a.next_prime_flag) P = next_prime(P);
  const DualCodeword v = sample_codeword(a.dim, P, a.dist, a.seed);
  write_file(a.out_path, format_codeword_file(v));

  RunConfigFile cfg;
  cfg.dim = a.dim;
  cfg.modulus = to_decimal(P);
  cfg.dist = a.dist;
  cfg.seed = a.seed;
  cfg.codeword_paths = {a.out_path};
  out << to_json(cfg).dump(2) << "\n";
  return ok;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string config_path;
  std::string save_config;
  unsigned threads = 0;
};

std::vector<InputRecipe> resolve_recipes(const RunConfigFile& c) {
  if (c.preset.empty()) return c.recipes;
  if (c.scale <= 0) throw UsageError("--scale must be positive");
  if (c.preset == "darmstadt40") return darmstadt40_recipes(c.scale, c.input_seed);
  if (c.preset == "darmstadt42") return darmstadt42_recipes(c.scale, c.input_seed);
  throw UsageError("unknown preset '" + c.preset + "'");
}

std::vector<BigInt> parse_schedule(const std::vector<std::string>& texts) {
  std::vector<BigInt> q;
  for (const std::string& t : texts) q.push_back(parse_integer_literal(t));
  return q;
}

int execute(RunConfigFile c, unsigned threads, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> algos = {"simple", "q", "codim2", "codimk", "general", "block"};
  if (std::find(algos.begin(), algos.end(), c.algo) == algos.end()) {
    throw UsageError("--algo must be one of simple, q, codim2, codimk, general, block");
  }
  if (c.format != "json" && c.format != "csv") throw UsageError("--format must be json or csv");
  const bool codim = c.algo == "codim2" || c.algo == "codimk";
  if (c.algo == "codim2") c.k = 2;
  const std::size_t wanted = codim ? c.k : 1;
  if (wanted < 1) throw UsageError("--k must be at least 1");

  const auto t0 = Clock::now();
  std::vector<DualCodeword> codewords;
  if (!c.basis_path.empty()) {
    if (wanted != 1) throw UsageError("--basis defines a single constraint; use --codeword files for co-dimension k");
    const Extraction e = extract_dual_codeword(parse_basis(read_file(c.basis_path)));
    codewords.push_back(e.codeword);
  } else if (!c.codeword_paths.empty()) {
    for (const std::string& p : c.codeword_paths) codewords.push_back(parse_codeword_file(read_file(p)));
  } else {
    if (c.dim == 0 || c.modulus.empty()) throw UsageError("give --codeword, --basis, or --dim with --modulus");
    const BigInt P = parse_modulus(c.modulus);
    for (std::size_t i = 0; i < wanted; ++i) codewords.push_back(sample_codeword(c.dim, P, c.dist, codeword_seed(c.seed, i)));
  }
  if (codewords.size() != wanted) {
    throw UsageError(c.algo + " needs " + std::to_string(wanted) + " codeword(s), got " + std::to_string(codewords.size()));
  }
  const DualCodeword& v = codewords.front();
  const std::size_t d = v.dim();
  if (c.dim != 0 && c.dim != d) throw UsageError("--dim disagrees with the codeword dimension");
  c.dim = d;
  c.modulus = to_decimal(v.P());

  const std::vector<InputRecipe> recipes = resolve_recipes(c);
  const BigInt q = parse_integer_literal(c.q);

  SolverConfig sc;
  RunReport report;
  if (c.algo == "simple") {
    sc = SolverConfig::simple();
  } else if (c.algo == "q") {
    sc = SolverConfig::q_multiplied(q);
  } else if (c.algo == "general") {
    sc = SolverConfig::general();
  } else if (c.algo == "block") {
    sc = SolverConfig::block(c.k_max);
  }
  sc.max_iterations = c.max_iterations;
  sc.cutoff_denominator = c.cutoff_denominator;
  sc.seed = c.seed;

  if (c.algo == "simple") {
    report = run_simple(v, d, sc);
  } else if (c.algo == "q") {
    report = run_q_multiplied(v, q, d, sc);
  } else if (c.algo == "general") {
    if (recipes.empty()) throw UsageError("--algo general needs --recipe, --dstar or a preset");
    report = run_general(v, generate(d, recipes), sc);
  } else if (c.algo == "block") {
    report = run_block(v, d, c.k_max, sc, recipes.empty() ? std::vector<IntVector>{} : generate(d, recipes));
  } else {
    CodimConfig cc;
    cc.max_iterations = c.max_iterations;
    cc.q_schedule = parse_schedule(c.q_schedule);
    cc.final_q = q;
    cc.threads = threads;
    cc.seed = c.seed;
    report = run_codimk(DualCode::checked(codewords), cc).report;
  }
  const double wall_ms = ms_since(t0);

  // independent re-check against every constraint before anything is written
  for (const IntVector& w : report.output_vectors) {
    for (const DualCodeword& cw : codewords) {
      if (!verify_membership(w, cw)) throw std::logic_error("solver output failed membership re-verification");
    }
  }

  std::optional<bool> preset_check;
  if (!c.preset.empty() && !c.basis_path.empty()) {
    const Real bound = report.initial_length() * boost::multiprecision::pow(Real(2), report.iterations);
    preset_check = report.status == RunStatus::found && report.iterations >= 16 && report.iterations <= 22 &&
                   report.length_of_first <= bound;
  }

  const auto [lower, upper] = predict_length_bounds(report.iterations, report.initial_length(), report.cutoff_root,
                                                    report.max_arity);
  std::string text;
  if (c.format == "json") {
    json j = report_to_json(report);
    j["algo"] = c.algo;
    j["P"] = to_decimal(v.P());
    j["d"] = d;
    j["k"] = codewords.size();
    j["wall_ms"] = wall_ms;
    j["membership_verified"] = true;
    if (preset_check) j["preset_check"] = *preset_check ? "pass" : "fail";
    text = j.dump(2) + "\n";
  } else {
    CsvWriter w({"algo", "P", "d", "seed", "status", "iter", "norm2", "length", "lower_bound", "upper_bound", "wall_ms"});
    w.add({c.algo, to_decimal(v.P()), std::to_string(d), std::to_string(c.seed), to_string(report.status),
           std::to_string(report.iterations), to_decimal(report.first_norm2), format_real(report.length_of_first),
           format_real(lower), format_real(upper), fixed_ms(wall_ms)});
    text = w.str();
  }
  emit(c.report_path, text, out);

  if (preset_check && !*preset_check) {
    err << "preset check failed: expected FOUND, 19 +- 3 iterations and length <= 2^iter L0\n";
    return solver_failed;
  }
  switch (report.status) {
    case RunStatus::found: return ok;
    case RunStatus::exhausted_list:
      err << "solver exhausted its list without a nonzero lattice vector\n";
      return solver_failed;
    case RunStatus::iteration_cap:
      err << "solver hit the iteration cap (" << report.max_iterations << ")\n";
      return iteration_cap;
  }
  return internal;
}

// ---------------------------------------------------------------- predict

struct PredictArgs {
  std::string modulus;
  std::string dim;
  std::string grid;
  std::string model = "fit";
  std::string dstar;
  std::string out_path;
};

const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names = {"fit",     "fit_raw", "recursion", "worst", "worst_improved",
                                                 "corrected", "avg",   "avg_unrefined", "general"};
  return names;
}

std::string evaluate_model(const std::string& model, const Real& P, const Real& d, const std::optional<Real>& dstar) {
  if (model == "fit") return std::to_string(predicted_iterations(P, d));
  if (model == "fit_raw") return format_real(n0_opt_fit(P, d));
  if (model == "recursion") return std::to_string(recursion_count(P, d));
  if (model == "worst") return format_real(n0_worst(P, d));
  if (model == "worst_improved") return format_real(n0_worst_improved(P, d));
  if (model == "corrected") return format_real(n0_effective_corrected(P, d));
  if (model == "avg") return format_real(n0_avg_coarse(P, d, true));
  if (model == "avg_unrefined") return format_real(n0_avg_coarse(P, d, false));
  if (model == "general") return format_real(general_iterations(P, dstar.value_or(d)));
  throw UsageError("unknown model '" + model + "'");
}

int cmd_predict(const PredictArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<std::pair<std::string, std::string>> rows;
  if (!a.grid.empty()) {
    if (!a.modulus.empty() || !a.dim.empty()) throw UsageError("--grid excludes --modulus and --dim");
    if (a.grid == "table5") {
      for (const ReferenceRun& r : reference_iteration_grid()) rows.emplace_back(r.P, std::to_string(r.d));
    } else {
      std::istringstream in(read_file(a.grid));
      std::string line;
      while (std::getline(in, line)) {
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        std::string p, d;
        if (!(ls >> p) || p[0] == '#') continue;
        if (!(ls >> d)) throw FormatError("grid line '" + line + "' needs P and d");
        if (p == "P") continue;  // header
        rows.emplace_back(p, d);
      }
    }
  } else {
    if (a.modulus.empty()) throw UsageError("--modulus is required without --grid");
    if (a.dim.empty() && a.dstar.empty()) throw UsageError("--dim (or --dstar for the general model) is required");
    rows.emplace_back(a.modulus, a.dim.empty() ? a.dstar : a.dim);
  }
  std::vector<std::string> models;
  if (a.model == "all") {
    models = model_names();
  } else if (std::find(model_names().begin(), model_names().end(), a.model) != model_names().end()) {
    models = {a.model};
  } else {
    throw UsageError("unknown --model '" + a.model + "'");
  }
  const std::optional<Real> dstar = a.dstar.empty() ? std::nullopt : std::optional<Real>(parse_real(a.dstar));

  CsvWriter w({"P", "d", "model", "value"});
  std::size_t failures = 0, evaluated = 0;
  for (const auto& [ptext, dtext] : rows) {
    const Real P = parse_real(ptext);
    const Real d = parse_real(dtext);
    for (const std::string& m : models) {
      ++evaluated;
      std::string value;
      try {
        value = evaluate_model(m, P, d, dstar);
      } catch (const RegimeError& e) {
        ++failures;
        value = "regime_error";
        err << ptext << "," << dtext << "," << m << ": " << e.what() << "\n";
      } catch (const DivergenceError& e) {
        ++failures;
        value = "divergent";
        err << ptext << "," << dtext << "," << m << ": " << e.what() << "\n";
      }
      w.add({ptext, dtext, m, value});
    }
  }
  emit(a.out_path, w.str(), out);
  return evaluated > 0 && failures == evaluated ? regime : ok;
}

// ---------------------------------------------------------------- extract

struct ExtractArgs {
  std::string basis_path;
  std::string out_path;
  std::string sidecar_path;
};

int cmd_extract(const ExtractArgs& a, std::ostream& out) {
  const LatticeBasis basis = parse_basis(read_file(a.basis_path));
  const BigInt det = determinant(basis.rows);
  if (det == 0) throw SingularError("basis is singular (determinant 0)");
  const BigInt P = abs(det);
  const bool prime = is_probable_prime(P);
  const Extraction e = extract_dual_codeword(basis);
  const DualityCheck dc = check_duality(basis, P, e.codeword.entries(), dual_matrix(basis));
  if (!dc.all()) throw std::logic_error("duality facts failed for an extracted codeword");

  write_file(a.out_path, format_codeword_file(e.codeword));
  json j = {{"d", basis.dim()},
            {"P", to_decimal(P)},
            {"det", to_decimal(det)},
            {"prime", prime},
            {"gaussian_heuristic", format_real(gaussian_heuristic(basis.dim(), P))},
            {"duality", {{"cube_pairing", dc.cube_pairing},
                         {"codeword_pairing", dc.codeword_pairing},
                         {"dual_integral", dc.dual_integral}}},
            {"codeword_file", a.out_path}};
  write_file(a.sidecar_path.empty() ? a.out_path + ".json" : a.sidecar_path, j.dump(2) + "\n");
  out << j.dump(2) << "\n";
  return ok;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string codeword_path;
  std::string vector_path;
  std::string basis_path;
};

json basis_facts(const std::vector<IntVector>& vectors, const BigInt& P) {
  const bool basis = is_basis(vectors, P);
  json j = {{"is_basis", basis}, {"orthogonality_defect", nullptr}};
  if (basis) j["orthogonality_defect"] = format_real(orthogonality_defect(vectors, P));
  return j;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const DualCodeword v = parse_codeword_file(read_file(a.codeword_path));
  const std::vector<IntVector> vectors = vectors_from_text(read_file(a.vector_path));
  json results = json::array();
  bool all_members = true;
  for (const IntVector& w : vectors) {
    if (w.dim() != v.dim()) {
      throw DimensionError("vector has dimension " + std::to_string(w.dim()) + ", codeword has " + std::to_string(v.dim()));
    }
    const bool member = verify_membership(w, v);
    all_members = all_members && member;
    const BigInt n2 = w.norm2();
    results.push_back({{"member", member},
                       {"norm2", to_decimal(n2)},
                       {"length", format_real(boost::multiprecision::sqrt(to_real(n2)))},
                       {"trivial", w.is_zero()}});
  }
  json j = {{"d", v.dim()}, {"P", to_decimal(v.P())}, {"all_members", all_members}, {"vectors", results}};
  if (vectors.size() == v.dim()) j["vector_set"] = basis_facts(vectors, v.P());
  if (!a.basis_path.empty()) {
    const Matrix rows = parse_matrix(read_file(a.basis_path));
    std::vector<IntVector> basis;
    for (const auto& r : rows) basis.push_back(IntVector::from_values(std::span<const BigInt>(r)));
    j["basis"] = basis_facts(basis, v.P());
  }
  out << j.dump(2) << "\n";
  return all_members ? ok : non_member;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::string suite;
  std::uint64_t seeds = 5;
  bool slow = false;
  unsigned threads = 0;
  std::string out_path;
};

struct BenchJob {
  BigInt P;
  std::size_t d = 0;
  std::uint64_t seed = 0;
  std::uint64_t d_star = 0;  // scaling suite only
};

struct BenchRow {
  std::vector<std::string> fields;
  bool within_hard_bound = true;
  bool failed = false;
  double wall_ms = 0;
};

void run_pool(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) job(i);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

BenchRow bench_one(const BenchJob& job, bool scaling) {
  BenchRow row;
  const auto t0 = Clock::now();
  std::string P_text = to_decimal(job.P);
  std::string predicted;
  try {
    const DualCodeword v = sample_dual_uniform(job.d, Modulus(job.P).with_primality(), job.seed);
    RunReport r;
    if (scaling) {
      InputRecipe rc;
      rc.kind = RecipeKind::sparse_signed;
      rc.count = job.d_star;
      rc.support_size = 8;
      rc.plus_count = 4;
      rc.minus_count = 4;
      rc.seed = job.seed;
      SolverConfig sc = SolverConfig::general();
      sc.seed = job.seed;
      r = run_general(v, generate(job.d, rc), sc);
      predicted = format_real(general_iterations(to_real(job.P), Real(job.d_star)));
    } else {
      SolverConfig sc = SolverConfig::simple();
      sc.seed = job.seed;
      r = run_simple(v, job.d, sc);
      try {
        predicted = std::to_string(predicted_iterations(to_real(job.P), Real(static_cast<unsigned long>(job.d))));
      } catch (const RegimeError&) {
        predicted = "";
      }
    }
    row.wall_ms = ms_since(t0);
    const Real sqrt2_pow = boost::multiprecision::pow(boost::multiprecision::sqrt(Real(2)), r.iterations);
    const BigInt two_pow = BigInt(1) << static_cast<unsigned long>(r.iterations);
    row.within_hard_bound = r.length_of_first <= r.initial_length() * to_real(two_pow);
    row.fields = {P_text, std::to_string(job.d), std::to_string(job.seed), std::to_string(r.iterations),
                  format_real(r.length_of_first), format_real(sqrt2_pow), to_decimal(two_pow), predicted,
                  fixed_ms(row.wall_ms)};
    if (scaling) row.fields.push_back(std::to_string(job.d_star));
    row.fields.push_back(to_string(r.status));
    row.failed = r.status != RunStatus::found;
  } catch (const std::exception& e) {
    row.failed = true;
    row.wall_ms = ms_since(t0);
    row.fields = {P_text, std::to_string(job.d), std::to_string(job.seed), "", "", "", "", predicted,
                  fixed_ms(row.wall_ms)};
    if (scaling) row.fields.push_back(std::to_string(job.d_star));
    row.fields.push_back(std::string("error: ") + e.what());
  }
  return row;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  static const std::map<std::string, std::uint32_t> table_dims = {
      {"table1", 1000}, {"table2", 2000}, {"table3", 4000}, {"table4", 8000}};
  if (a.seeds == 0) throw UsageError("--seeds must be positive");
  const bool scaling = a.suite == "scaling";
  const BigInt slow_threshold("1" + std::string(60, '0'));

  std::vector<BenchJob> jobs;
  std::size_t skipped = 0;
  auto add_grid = [&](const std::vector<ReferenceRun>& grid, std::optional<std::uint32_t> only_d) {
    std::vector<std::pair<std::string, std::uint32_t>> seen;
    for (const ReferenceRun& r : grid) {
      if (only_d && r.d != *only_d) continue;
      const std::pair<std::string, std::uint32_t> key{r.P, r.d};
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      seen.push_back(key);
      const BigInt P = next_prime(parse_integer_literal(r.P));
      if (P > slow_threshold && !a.slow) {
        ++skipped;
        continue;
      }
      for (std::uint64_t s = 1; s <= a.seeds; ++s) jobs.push_back({P, r.d, s, 0});
    }
  };
  if (table_dims.count(a.suite)) {
    add_grid(reference_length_tables(), table_dims.at(a.suite));
  } else if (a.suite == "table5") {
    add_grid(reference_iteration_grid(), std::nullopt);
  } else if (scaling) {
    const BigInt P = next_prime(BigInt("1" + std::string(40, '0')));
    for (std::uint64_t ds : {4096u, 8192u, 16384u, 32768u}) {
      for (std::uint64_t s = 1; s <= a.seeds; ++s) jobs.push_back({P, 40, s, ds});
    }
  } else {
    throw UsageError("--suite must be table1, table2, table3, table4, table5 or scaling");
  }

  std::vector<BenchRow> rows(jobs.size());
  run_pool(jobs.size(), a.threads, [&](std::size_t i) { rows[i] = bench_one(jobs[i], scaling); });

  std::vector<std::string> header = {"P", "d", "seed", "iter", "length", "sqrt2^iter", "2^iter", "predicted_iter",
                                     "wall_ms"};
  if (scaling) header.push_back("d_star");
  header.push_back("status");
  CsvWriter w(header);
  std::size_t failed = 0, outside = 0;
  for (const BenchRow& r : rows) {
    w.add(r.fields);
    failed += r.failed;
    outside += !r.within_hard_bound;
  }
  emit(a.out_path, w.str(), out);

  err << a.suite << ": " << rows.size() << " runs, " << failed << " failed, " << outside
      << " above 2^iter L0";
  if (skipped) err << ", " << skipped << " slow-tier grid points skipped (use --slow)";
  err << "\n";
  if (scaling) {
    std::map<std::uint64_t, std::vector<double>> times;
    for (std::size_t i = 0; i < jobs.size(); ++i) times[jobs[i].d_star].push_back(rows[i].wall_ms);
    std::optional<double> prev;
    for (auto& [ds, t] : times) {
      std::sort(t.begin(), t.end());
      const double med = t[t.size() / 2];
      err << "d*=" << ds << " median_ms=" << fixed_ms(med);
      if (prev && *prev > 0) err << " ratio=" << format_real(Real(med / *prev)) << (med / *prev <= 2.5 ? "" : " (>2.5)");
      err << "\n";
      prev = med;
    }
  }
  return outside ? internal : ok;
}

// ---------------------------------------------------------------- dispatch

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return usage;
  } catch (const NotCodimensionOneError& e) {
    err << "not co-dimension 1: " << e.what() << "\n";
    return not_codim1;
  } catch (const SingularError& e) {
    err << "singular basis: " << e.what() << "\n";
    return not_codim1;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return format;
  } catch (const DimensionError& e) {
    err << "dimension error: " << e.what() << "\n";
    return format;
  } catch (const RegimeError& e) {
    err << "regime error: " << e.what() << "\n";
    return regime;
  } catch (const DivergenceError& e) {
    err << "regime error: " << e.what() << "\n";
    return regime;
  } catch (const HarvestError& e) {
    err << "solver failed: " << e.what() << "\n";
    return solver_failed;
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return usage;
  } catch (const json::exception& e) {
    err << "format error: " << e.what() << "\n";
    return format;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return internal;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Short lattice vectors by sorted Euclidean reduction of projections", "sortreduce"};
  app.require_subcommand(1);
  std::function<int()> action;

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Sample a dual codeword and write it to a file");
  g->add_option("--dim", gen.dim, "Dimension d")->required();
  g->add_option("--modulus", gen.modulus, "Modulus P (e.g. 1000003, 2.19e12, 10^12)");
  g->add_option("--modulus-bits", gen.modulus_bits, "Draw a random prime modulus of this bit length");
  g->add_flag("--next-prime", gen.next_prime_flag, "Round the modulus up to the next prime");
  g->add_option("--dist", gen.dist, "uniform or loguniform")->capture_default_str();
  g->add_option("--seed", gen.seed, "Seed")->capture_default_str();
  g->add_option("--out", gen.out_path, "Codeword file to write")->required();
  g->callback([&] { action = [&] { return cmd_gen(gen, out); }; });

  RunConfigFile rc;
  SolveArgs sa;
  std::vector<std::string> recipe_texts;
  std::optional<std::uint64_t> dstar, max_iter, cutoff_n;
  auto* s = app.add_subcommand("solve", "Run one algorithm variant and write a report");
  s->add_option("--algo", rc.algo, "simple, q, codim2, codimk, general or block")->capture_default_str();
  s->add_option("--codeword", rc.codeword_paths, "Codeword file (repeat for co-dimension k)");
  s->add_option("--basis", rc.basis_path, "Basis file; the codeword is extracted from it");
  s->add_option("--dim", rc.dim, "Dimension, when generating the codeword(s)");
  s->add_option("--modulus", rc.modulus, "Modulus, when generating the codeword(s)");
  s->add_option("--dist", rc.dist, "uniform or loguniform")->capture_default_str();
  s->add_option("--seed", rc.seed, "Codeword seed")->capture_default_str();
  s->add_option("--input-seed", rc.input_seed, "Input-set seed")->capture_default_str();
  s->add_option("--k", rc.k, "Co-dimension for codimk")->capture_default_str();
  s->add_option("--kmax", rc.k_max, "Largest block arity")->capture_default_str();
  s->add_option("--dstar", dstar, "Input-set size for general (sparse signed vectors)");
  s->add_option("--recipe", recipe_texts,
                "unit | sparse:COUNT:SUPPORT:PLUS:MINUS | pattern:COUNT:v1,v2,... | darmstadt40 | darmstadt42");
  s->add_option("--scale", rc.scale, "Count multiplier for the darmstadt presets")->capture_default_str();
  s->add_option("--q", rc.q, "Multiplier q (final level for co-dimension k)")->capture_default_str();
  s->add_option("--q-schedule", rc.q_schedule, "Harvest multipliers for co-dimension k");
  s->add_option("--max-iter", max_iter, "Iteration cap");
  s->add_option("--cutoff-n", cutoff_n, "n in the cutoff floor(P^(1/n))");
  s->add_option("--format", rc.format, "json or csv")->capture_default_str();
  s->add_option("--out", rc.report_path, "Report file (default stdout)");
  s->add_option("--config", sa.config_path, "Run from a saved configuration (run flags other than --out are ignored)");
  s->add_option("--save-config", sa.save_config, "Write the effective configuration");
  s->add_option("--threads", sa.threads, "Harvest threads for co-dimension k (0 = all cores)");
  s->callback([&] {
    action = [&] {
      RunConfigFile c;
      if (!sa.config_path.empty()) {
        try {
          c = config_from_json(json::parse(read_file(sa.config_path)));
        } catch (const json::parse_error& e) {
          throw FormatError(std::string("configuration is not valid JSON: ") + e.what());
        }
        if (!rc.report_path.empty()) c.report_path = rc.report_path;  // --out still redirects
      } else {
        c = rc;
        c.max_iterations = max_iter;
        c.cutoff_denominator = cutoff_n;
        for (const std::string& t : recipe_texts) {
          if (t == "darmstadt40" || t == "darmstadt42") {
            if (recipe_texts.size() != 1) throw UsageError("a darmstadt preset cannot be combined with other recipes");
            c.preset = t;
          } else {
            c.recipes.push_back(parse_recipe(t, splitmix64(c.input_seed + c.recipes.size())));
          }
        }
        if (dstar) {
          if (!recipe_texts.empty()) throw UsageError("--dstar and --recipe are exclusive");
          const std::uint32_t support = static_cast<std::uint32_t>(std::min<std::size_t>(4, rc.dim ? rc.dim : 4));
          InputRecipe r;
          r.kind = RecipeKind::sparse_signed;
          r.count = *dstar;
          r.support_size = support;
          r.plus_count = support / 2;
          r.minus_count = support - support / 2;
          r.seed = c.input_seed;
          c.recipes.push_back(r);
        }
      }
      if (!sa.save_config.empty()) write_file(sa.save_config, to_json(c).dump(2) + "\n");
      return execute(c, sa.threads, out, err);
    };
  });

  PredictArgs pa;
  auto* p = app.add_subcommand("predict", "Evaluate the iteration models");
  p->add_option("--modulus,-P", pa.modulus, "Modulus P");
  p->add_option("--dim,-d", pa.dim, "Dimension d");
  p->add_option("--grid", pa.grid, "File of 'P d' lines, or 'table5' for the built-in grid");
  p->add_option("--model", pa.model,
                "fit, fit_raw, recursion, worst, worst_improved, corrected, avg, avg_unrefined, general or all")
      ->capture_default_str();
  p->add_option("--dstar", pa.dstar, "Input-set size for the general model");
  p->add_option("--out", pa.out_path, "CSV file (default stdout)");
  p->callback([&] { action = [&] { return cmd_predict(pa, out, err); }; });

  ExtractArgs ea;
  auto* e = app.add_subcommand("extract", "Extract the dual codeword of a co-dimension-1 basis");
  e->add_option("--basis", ea.basis_path, "Basis file")->required();
  e->add_option("--out", ea.out_path, "Codeword file to write")->required();
  e->add_option("--sidecar", ea.sidecar_path, "JSON sidecar (default <out>.json)");
  e->callback([&] { action = [&] { return cmd_extract(ea, out); }; });

  VerifyArgs va;
  auto* v = app.add_subcommand("verify", "Check lattice membership of vectors");
  v->add_option("--codeword", va.codeword_path, "Codeword file")->required();
  v->add_option("--vector", va.vector_path, "Vector list or solve report (JSON)")->required();
  v->add_option("--basis", va.basis_path, "d vectors to check as a basis (is_basis, orthogonality defect)");
  v->callback([&] { action = [&] { return cmd_verify(va, out); }; });

  BenchArgs ba;
  auto* b = app.add_subcommand("bench", "Re-run a published grid at desk scale");
  b->add_option("--suite", ba.suite, "table1, table2, table3, table4, table5 or scaling")->required();
  b->add_option("--seeds", ba.seeds, "Seeds per grid point")->capture_default_str();
  b->add_flag("--slow", ba.slow, "Include grid points with P > 10^60");
  b->add_option("--threads", ba.threads, "Worker threads (0 = all cores)");
  b->add_option("--out", ba.out_path, "CSV file (default stdout)");
  b->callback([&] { action = [&] { return cmd_bench(ba, out, err); }; });

  std::vector<std::string> argv_store = {"sortreduce"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const auto chosen = app.get_subcommands();
    out << (chosen.empty() ? app.help() : chosen.front()->help());
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& ex) {
    err << "usage error: " << ex.what() << "\n";
    return usage;
  }
  if (!action) return usage;
  return guarded(action, err);
}

}  // namespace sortreduce::cli
