#include "sortreduce/kblock.hpp"

#include <algorithm>

#include "sortreduce/errors.hpp"

namespace sortreduce {
namespace {

BigInt abs_diff(const BigInt& a, const BigInt& b) { return a >= b ? BigInt(a - b) : BigInt(b - a); }

bool better(const BigInt& delta, const std::vector<std::size_t>& idx, const DonorMatch& best) {
  if (delta != best.delta) return delta < best.delta;
  return std::lexicographical_compare(idx.begin(), idx.end(), best.indices.begin(), best.indices.end());
}

std::size_t first_index_of(std::span<const BigInt> values, std::size_t prefix, const BigInt& x) {
  return static_cast<std::size_t>(std::lower_bound(values.begin(), values.begin() + prefix, x) - values.begin());
}

std::optional<DonorMatch> nearest_single(std::span<const BigInt> values, std::size_t prefix, const BigInt& target) {
  const std::size_t p = first_index_of(values, prefix, target);
  DonorMatch best;
  if (p < prefix) {
    best.delta = values[p] - target;
    best.indices = {p};
  }
  if (p > 0) {
    BigInt delta = target - values[p - 1];
    // ties go to the lower value, which sits at a smaller position
    if (best.indices.empty() || delta <= best.delta) {
      best.delta = delta;
      best.indices = {first_index_of(values, p, values[p - 1])};
    }
  }
  return best;
}

// Pair i < j with values[i] + values[j] == sum, smallest i, then smallest j.
std::optional<std::pair<std::size_t, std::size_t>> first_pair_with_sum(std::span<const BigInt> values,
                                                                       std::size_t prefix, const BigInt& sum) {
  std::size_t i = 0;
  std::size_t j = prefix - 1;
  BigInt s;
  while (i < j) {
    s = values[i] + values[j];
    if (s < sum) {
      ++i;
    } else if (s > sum) {
      --j;
    } else {
      // every j' > j was ruled out for this i; find the leftmost partner
      const BigInt want = sum - values[i];
      auto it = std::lower_bound(values.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                 values.begin() + static_cast<std::ptrdiff_t>(j) + 1, want);
      return std::make_pair(i, static_cast<std::size_t>(it - values.begin()));
    }
  }
  return std::nullopt;
}

std::optional<DonorMatch> nearest_pair(std::span<const BigInt> values, std::size_t prefix, const BigInt& target) {
  std::size_t i = 0;
  std::size_t j = prefix - 1;
  BigInt best_delta;
  bool have = false;
  BigInt s;
  while (i < j) {
    s = values[i] + values[j];
    BigInt delta = abs_diff(target, s);
    if (!have || delta < best_delta) {
      best_delta = delta;
      have = true;
      if (best_delta == 0) break;
    }
    if (s < target) {
      ++i;
    } else {
      --j;
    }
  }
  DonorMatch best;
  best.delta = best_delta;
  for (const BigInt& sum : {BigInt(target - best_delta), BigInt(target + best_delta)}) {
    if (auto pair = first_pair_with_sum(values, prefix, sum)) {
      std::vector<std::size_t> idx{pair->first, pair->second};
      if (best.indices.empty() || idx < best.indices) best.indices = std::move(idx);
    }
  }
  return best;
}

BlockResult assemble(std::size_t target, const WorkingList& list, const DonorMatch& match, const BigInt& P) {
  const TrackedVector& t = list[target];
  IntVector vec = t.vec;
  BigInt proj = t.proj;
  for (std::size_t i : match.indices) {
    vec = vec - list[i].vec;
    proj -= list[i].proj;
  }
  BlockResult out{{std::move(vec), std::move(proj), t.kind}, {}};
  out.choice.arity = match.indices.size() + 1;
  out.choice.donor_indices = match.indices;
  if (out.vec.proj < 0) {
    out.vec.vec = -out.vec.vec;
    out.vec.proj = -out.vec.proj;
    out.choice.sign_flipped = true;
  }
  if (out.vec.kind == ProjKind::mod_p) {
    if (P <= 0) throw ConfigError("modulus required for mod-P block reduction");
    if (out.vec.proj >= P) out.vec.proj = canonical_mod(out.vec.proj, P);
  }
  return out;
}

void check_target(std::size_t target, const WorkingList& list) {
  if (target >= list.size()) throw DimensionError("target position outside the list");
}

}  // namespace

std::optional<DonorMatch> search_donors(std::span<const BigInt> values, std::size_t prefix, const BigInt& target,
                                        std::size_t count) {
  if (prefix > values.size()) throw DimensionError("prefix longer than the value list");
  if (count == 0 || prefix < count) return std::nullopt;
  if (count == 1) return nearest_single(values, prefix, target);
  if (count == 2) return nearest_pair(values, prefix, target);

  std::optional<DonorMatch> best;
  for (std::size_t last = count - 1; last < prefix; ++last) {
    auto inner = search_donors(values, last, target - values[last], count - 1);
    if (!inner) continue;
    inner->indices.push_back(last);
    if (!best || better(inner->delta, inner->indices, *best)) best = std::move(inner);
  }
  return best;
}

std::optional<DonorMatch> search_donor_pairs_brute(std::span<const BigInt> values, std::size_t prefix,
                                                   const BigInt& target) {
  if (prefix > values.size()) throw DimensionError("prefix longer than the value list");
  std::optional<DonorMatch> best;
  for (std::size_t i = 0; i < prefix; ++i) {
    for (std::size_t j = i + 1; j < prefix; ++j) {
      BigInt delta = abs_diff(target, values[i] + values[j]);
      if (!best || delta < best->delta) best = DonorMatch{std::move(delta), {i, j}};
    }
  }
  return best;
}

BlockResult reduce3(std::size_t target, const WorkingList& list, const BigInt& P) {
  check_target(target, list);
  if (target < 2) throw ArityError("tripartite reduction needs two smaller positions");
  const auto values = list.projections();
  return assemble(target, list, *search_donor_pairs_brute(values, target, values[target]), P);
}

BlockResult reduce3_fast(std::size_t target, const WorkingList& list, const BigInt& P) {
  check_target(target, list);
  if (target < 2) throw ArityError("tripartite reduction needs two smaller positions");
  const auto values = list.projections();
  return assemble(target, list, *search_donors(values, target, values[target], 2), P);
}

BlockResult reduce_k(std::size_t k, std::size_t target, const WorkingList& list, const BigInt& P) {
  check_target(target, list);
  if (k < 2) throw ArityError("arity must be at least 2");
  if (target < k - 1) throw ArityError("not enough smaller positions for the requested arity");
  if (k == 2) {
    DonorMatch pred{list[target].proj - list[target - 1].proj, {target - 1}};
    return assemble(target, list, pred, P);
  }
  const auto values = list.projections();
  return assemble(target, list, *search_donors(values, target, values[target], k - 1), P);
}

BlockResult best_choice_reduce(std::size_t k_max, std::size_t target, const WorkingList& list,
                               const CutoffRule& rule) {
  const auto values = list.projections();
  return best_choice_reduce(k_max, target, list, rule, values);
}

BlockResult best_choice_reduce(std::size_t k_max, std::size_t target, const WorkingList& list,
                               const CutoffRule& rule, std::span<const BigInt> values) {
  check_target(target, list);
  if (values.size() != list.size()) throw DimensionError("projection cache does not match the list");
  if (target < 1) throw ArityError("block reduction needs a predecessor");
  bool fired = false;
  BlockResult best{reduce2(list[target - 1], list[target], rule, fired), {}};
  best.choice.arity = 2;
  best.choice.donor_indices = {target - 1};
  best.choice.fired = fired;
  if (k_max < 3) return best;

  const std::size_t top = std::min(k_max, target + 1);
  for (std::size_t k = 3; k <= top; ++k) {
    auto match = search_donors(values, target, values[target], k - 1);
    if (!match) continue;
    BlockResult cand = assemble(target, list, *match, rule.P());
    if (cand.vec.proj < best.vec.proj) best = std::move(cand);
  }
  return best;
}

}  // namespace sortreduce
