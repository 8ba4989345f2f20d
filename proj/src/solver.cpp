#include "sortreduce/solver.hpp"

#include <algorithm>
#include <stdexcept>

#include "sortreduce/errors.hpp"
#include "sortreduce/input_sets.hpp"
#include "sortreduce/iter_model.hpp"
#include "sortreduce/kblock.hpp"
#include "sortreduce/working_list.hpp"

namespace sortreduce {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::simple: return "simple";
    case Variant::q_multiplied: return "q";
    case Variant::general: return "general";
    case Variant::block: return "block";
  }
  return "?";
}

std::string to_string(Boundary b) { return b == Boundary::shrink ? "shrink" : "keep_first"; }
std::string to_string(ProjKind k) { return k == ProjKind::raw ? "raw" : "mod_p"; }

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::found: return "FOUND";
    case RunStatus::exhausted_list: return "EXHAUSTED_LIST";
    case RunStatus::iteration_cap: return "ITERATION_CAP";
  }
  return "?";
}

Variant parse_variant(const std::string& s) {
  if (s == "simple") return Variant::simple;
  if (s == "q") return Variant::q_multiplied;
  if (s == "general") return Variant::general;
  if (s == "block") return Variant::block;
  throw ConfigError("unknown variant '" + s + "'");
}

SolverConfig SolverConfig::simple() { return {}; }

SolverConfig SolverConfig::q_multiplied(BigInt q) {
  SolverConfig c;
  c.variant = Variant::q_multiplied;
  c.q = std::move(q);
  return c;
}

SolverConfig SolverConfig::general() {
  SolverConfig c;
  c.variant = Variant::general;
  c.boundary = Boundary::keep_first;
  c.proj_kind = ProjKind::mod_p;
  c.discard_zero_vectors = true;
  return c;
}

SolverConfig SolverConfig::block(std::size_t k_max) {
  SolverConfig c;
  c.variant = Variant::block;
  c.k_max = k_max;
  c.discard_zero_vectors = true;
  return c;
}

SolverConfig SolverConfig::codim_level() {
  SolverConfig c;
  c.variant = Variant::q_multiplied;
  c.proj_kind = ProjKind::mod_p;
  c.discard_zero_vectors = true;
  return c;
}

void SolverConfig::validate() const {
  switch (variant) {
    case Variant::simple:
      if (boundary != Boundary::shrink || proj_kind != ProjKind::raw) {
        throw ConfigError("simple variant requires the shrink boundary and exact projections");
      }
      break;
    case Variant::general:
      if (boundary != Boundary::keep_first || proj_kind != ProjKind::mod_p || !discard_zero_vectors) {
        throw ConfigError("general variant requires keep_first, mod-P projections and zero discard");
      }
      break;
    case Variant::q_multiplied:
      if (q < 1) throw ConfigError("q must be positive");
      break;
    case Variant::block:
      if (k_max < 2) throw ConfigError("block variant requires k_max >= 2");
      break;
  }
  if (cutoff_denominator && *cutoff_denominator == 0) throw ConfigError("cutoff denominator must be positive");
  if (max_iterations && *max_iterations == 0) throw ConfigError("iteration cap must be positive");
}

Real RunReport::initial_length() const { return boost::multiprecision::sqrt(to_real(initial_norm2)); }

bool operator==(const IterationRecord& a, const IterationRecord& b) {
  return a.list_size == b.list_size && a.min_proj == b.min_proj && a.max_proj == b.max_proj &&
         a.max_norm2 == b.max_norm2 && a.max_lineage_depth == b.max_lineage_depth &&
         a.reductions_fired == b.reductions_fired;
}

bool operator==(const RunReport& a, const RunReport& b) {
  return a.status == b.status && a.output_vectors == b.output_vectors && a.iterations == b.iterations &&
         a.initial_list_size == b.initial_list_size && a.final_list_size == b.final_list_size &&
         a.first_norm2 == b.first_norm2 && a.initial_norm2 == b.initial_norm2 && a.cutoff_root == b.cutoff_root &&
         a.cutoff_denominator == b.cutoff_denominator && a.max_iterations == b.max_iterations && a.max_arity == b.max_arity &&
         a.lineage_depth_of_first == b.lineage_depth_of_first && a.trace == b.trace && a.variant == b.variant &&
         a.proj_kind == b.proj_kind && a.seed == b.seed && a.generator == b.generator;
}

bool outputs_are_members(const RunReport& report, const DualCodeword& v) {
  return std::all_of(report.output_vectors.begin(), report.output_vectors.end(),
                     [&](const IntVector& w) { return !w.is_zero() && pi(w, v) == 0; });
}

namespace {

std::uint64_t default_cap(const BigInt& P, std::size_t size) {
  if (BigInt(static_cast<unsigned long>(size)) < P) {
    try {
      return std::max<std::uint64_t>(16, 4 * predicted_iterations(to_real(P), Real(static_cast<unsigned long>(size))));
    } catch (const RegimeError&) {
    }
  }
  return 16;
}

BigInt pow_ui(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// Shared iteration loop for every variant.
class Engine {
 public:
  Engine(const DualCodeword& v, const SolverConfig& cfg, std::size_t k_max, const RunHooks& hooks)
      : v_(v), cfg_(cfg), k_max_(k_max), hooks_(hooks) {}

  RunReport run(std::vector<IntVector> input) {
    RunReport rep;
    rep.variant = cfg_.variant;
    rep.max_arity = std::max<std::size_t>(2, k_max_);
    rep.proj_kind = cfg_.proj_kind;
    rep.seed = cfg_.seed;
    rep.generator = Stream::generator_name;
    rep.initial_list_size = input.size();

    std::vector<TrackedVector> items;
    items.reserve(input.size());
    for (IntVector& w : input) {
      if (w.dim() != v_.dim()) throw DimensionError("input vector dimension differs from the codeword");
      TrackedVector t = TrackedVector::track(std::move(w), v_, cfg_.proj_kind);
      if (t.proj < 0) {  // exact projections of caller vectors: flip into the nonnegative half
        t.vec = -t.vec;
        t.proj = -t.proj;
      }
      items.push_back(std::move(t));
    }
    list_ = WorkingList(std::move(items));
    depth_.assign(list_.size(), 0);
    if (cfg_.discard_zero_vectors) discard_zeros();

    const std::uint64_t denom =
        cfg_.cutoff_denominator ? *cfg_.cutoff_denominator
                                : (rep.initial_list_size >= 3 ? rep.initial_list_size - 2 : 0);
    if (denom == 0) throw ConfigError("cutoff needs at least 3 input vectors (denominator size - 2)");
    const CutoffRule rule(denom, v_.P());
    rep.cutoff_denominator = denom;
    rep.cutoff_root = rule.root();
    rep.max_iterations = cfg_.max_iterations ? *cfg_.max_iterations : default_cap(v_.P(), rep.initial_list_size);

    rep.initial_norm2 = 0;
    for (const TrackedVector& t : list_.items()) rep.initial_norm2 = std::max(rep.initial_norm2, t.vec.norm2());
    BigInt factor = rule.root() + 1;
    if (BigInt(static_cast<unsigned long>(k_max_)) > factor) factor = static_cast<unsigned long>(k_max_);
    const BigInt factor2 = factor * factor;

    sort();
    const bool pigeonhole = pigeonhole_applies();

    while (true) {
      if (list_.empty()) {
        rep.status = RunStatus::exhausted_list;
        break;
      }
      if (list_[0].proj == 0) {
        rep.status = RunStatus::found;
        break;
      }
      if (list_.size() <= 1) {
        rep.status = RunStatus::exhausted_list;
        break;
      }
      if (rep.iterations >= rep.max_iterations) {
        rep.status = RunStatus::iteration_cap;
        break;
      }

      const std::size_t fired = pass(rule);
      if (pigeonhole && rep.iterations == 0 && fired == 0) {
        throw std::logic_error("no reduction fired in the first pass despite distinct projections");
      }
      if (cfg_.discard_zero_vectors) discard_zeros();
      sort();
      ++rep.iterations;

      IterationRecord rec = record(fired);
      const BigInt bound = rep.initial_norm2 * pow_ui(factor2, static_cast<unsigned long>(rep.iterations));
      if (rec.max_norm2 > bound) throw std::logic_error("length grew faster than the triangle-inequality bound");
      rep.trace.push_back(std::move(rec));
      if (cfg_.audit) audit();
      if (hooks_.after_pass) hooks_.after_pass(rep.iterations, list_.items());
    }

    rep.final_list_size = list_.size();
    for (std::size_t i = 0; i < list_.size() && list_[i].proj == 0; ++i) {
      if (list_[i].vec.is_zero()) continue;
      if (list_[i].recompute(v_) != 0) throw std::logic_error("output failed the membership check");
      if (rep.output_vectors.empty()) rep.lineage_depth_of_first = depth_[i];
      rep.output_vectors.push_back(list_[i].vec);
    }
    if (rep.status == RunStatus::found && rep.output_vectors.empty()) {
      // only zero vectors reached projection 0; nothing usable was produced
      rep.status = RunStatus::exhausted_list;
    }
    if (!rep.output_vectors.empty()) {
      rep.first_norm2 = rep.output_vectors.front().norm2();
    } else if (!list_.empty()) {
      rep.first_norm2 = list_[0].vec.norm2();
      rep.lineage_depth_of_first = depth_[0];
    }
    rep.length_of_first = boost::multiprecision::sqrt(to_real(rep.first_norm2));
    return rep;
  }

 private:
  // One reduce pass over the sorted list; returns how many reductions fired.
  std::size_t pass(const CutoffRule& rule) {
    const std::size_t n = list_.size();
    std::vector<TrackedVector> out;
    std::vector<std::size_t> depth;
    out.reserve(n);
    depth.reserve(n);
    if (cfg_.boundary == Boundary::keep_first) {
      out.push_back(list_[0]);
      depth.push_back(depth_[0]);
    }
    std::size_t fired_count = 0;
    if (k_max_ <= 2) {
      for (std::size_t i = 0; i + 1 < n; ++i) {
        bool fired = false;
        out.push_back(reduce2(list_[i], list_[i + 1], rule, fired));
        depth.push_back(depth_[i] + (fired ? 1 : 0));
        fired_count += fired ? 1 : 0;
      }
    } else {
      const auto projs = list_.projections();
      for (std::size_t t = 1; t < n; ++t) {
        BlockResult r = best_choice_reduce(k_max_, t, list_, rule, projs);
        std::size_t d = 0;
        if (r.choice.arity == 2) {
          d = depth_[t - 1] + (r.choice.fired ? 1 : 0);
          fired_count += r.choice.fired ? 1 : 0;
        } else {
          d = depth_[t];
          for (std::size_t i : r.choice.donor_indices) d = std::max(d, depth_[i]);
          ++d;
          ++fired_count;
        }
        out.push_back(std::move(r.vec));
        depth.push_back(d);
      }
    }
    list_ = WorkingList(std::move(out));
    depth_ = std::move(depth);
    return fired_count;
  }

  void sort() {
    const auto perm = list_.sort();
    std::vector<std::size_t> depth(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) depth[i] = depth_[perm[i]];
    depth_ = std::move(depth);
  }

  void discard_zeros() {
    const auto kept = list_.discard_zero_vectors();
    std::vector<std::size_t> depth(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) depth[i] = depth_[kept[i]];
    depth_ = std::move(depth);
  }

  // Distinct positive projections below P guarantee a reduction in the first pairwise pass.
  bool pigeonhole_applies() const {
    const bool pairwise_unit = cfg_.variant == Variant::simple ||
                               (cfg_.variant == Variant::q_multiplied && cfg_.proj_kind == ProjKind::raw);
    if (!pairwise_unit || k_max_ > 2 || list_.size() < 3) return false;
    for (std::size_t i = 0; i < list_.size(); ++i) {
      if (list_[i].proj <= 0 || list_[i].proj >= v_.P()) return false;
      if (i > 0 && list_[i].proj == list_[i - 1].proj) return false;
    }
    return true;
  }

  IterationRecord record(std::size_t fired) const {
    IterationRecord rec;
    rec.list_size = list_.size();
    rec.reductions_fired = fired;
    if (list_.empty()) return rec;
    rec.min_proj = list_[0].proj;
    rec.max_proj = list_[list_.size() - 1].proj;
    rec.max_norm2 = 0;
    for (const TrackedVector& t : list_.items()) rec.max_norm2 = std::max(rec.max_norm2, t.vec.norm2());
    rec.max_lineage_depth = *std::max_element(depth_.begin(), depth_.end());
    return rec;
  }

  void audit() const {
    for (const TrackedVector& t : list_.items()) {
      if (t.recompute(v_) != t.proj) throw std::logic_error("cached projection disagrees with recomputation");
    }
  }

  const DualCodeword& v_;
  const SolverConfig& cfg_;
  std::size_t k_max_;
  const RunHooks& hooks_;
  WorkingList list_;
  std::vector<std::size_t> depth_;
};

void require_prime(const DualCodeword& v) {
  if (!v.modulus().is_prime()) throw ConfigError("q-multiplication requires a prime modulus");
}

}  // namespace

RunReport run_simple(const DualCodeword& v, std::size_t d, const SolverConfig& config, const RunHooks& hooks) {
  config.validate();
  if (config.variant != Variant::simple) throw ConfigError("run_simple needs the simple variant");
  if (d != v.dim()) throw DimensionError("d differs from the codeword dimension");
  if (d < 3) throw ConfigError("d must be at least 3");
  return Engine(v, config, 2, hooks).run(unit_basis(d));
}

RunReport run_q_multiplied(const DualCodeword& v, const BigInt& q, std::vector<IntVector> input,
                           const SolverConfig& config, const RunHooks& hooks) {
  config.validate();
  if (config.variant != Variant::q_multiplied) throw ConfigError("run_q_multiplied needs the q variant");
  if (input.size() < 3) throw ConfigError("input list needs at least 3 vectors");
  require_prime(v);
  if (canonical_mod(q, v.P()) == 0) throw ConfigError("q must be nonzero modulo P");
  const DualCodeword vq = v.multiplied(q);
  RunReport rep = Engine(vq, config, 2, hooks).run(std::move(input));
  if (!outputs_are_members(rep, v)) throw std::logic_error("q-multiplied output is not orthogonal to the original codeword");
  return rep;
}

RunReport run_q_multiplied(const DualCodeword& v, const BigInt& q, std::size_t d, const SolverConfig& config,
                           const RunHooks& hooks) {
  if (d != v.dim()) throw DimensionError("d differs from the codeword dimension");
  if (d < 3) throw ConfigError("d must be at least 3");
  return run_q_multiplied(v, q, unit_basis(d), config, hooks);
}

RunReport run_general(const DualCodeword& v, std::vector<IntVector> input, const SolverConfig& config,
                      const RunHooks& hooks) {
  config.validate();
  if (config.variant != Variant::general) throw ConfigError("run_general needs the general variant");
  if (input.empty()) throw ConfigError("input list is empty");
  if (input.size() < 3) throw ConfigError("input list needs at least 3 vectors");
  return Engine(v, config, 2, hooks).run(std::move(input));
}

RunReport run_block(const DualCodeword& v, std::size_t d, std::size_t k_max, const SolverConfig& config,
                    std::vector<IntVector> input, const RunHooks& hooks) {
  SolverConfig cfg = config;
  cfg.k_max = k_max;
  cfg.validate();
  if (cfg.variant != Variant::block) throw ConfigError("run_block needs the block variant");
  if (d != v.dim()) throw DimensionError("d differs from the codeword dimension");
  if (input.empty()) {
    if (d < 3) throw ConfigError("d must be at least 3");
    input = unit_basis(d);
  }
  if (input.size() < 3) throw ConfigError("input list needs at least 3 vectors");
  return Engine(v, cfg, k_max, hooks).run(std::move(input));
}

}  // namespace sortreduce
