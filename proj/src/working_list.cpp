#include "sortreduce/working_list.hpp"

#include <algorithm>
#include <numeric>

#include "sortreduce/errors.hpp"

namespace sortreduce {

std::vector<BigInt> WorkingList::projections() const {
  std::vector<BigInt> out;
  out.reserve(items_.size());
  for (const TrackedVector& t : items_) out.push_back(t.proj);
  return out;
}

std::vector<std::size_t> WorkingList::sort() {
  std::vector<std::size_t> perm(items_.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return items_[a].proj < items_[b].proj; });
  std::vector<TrackedVector> sorted;
  sorted.reserve(items_.size());
  for (std::size_t i : perm) sorted.push_back(std::move(items_[i]));
  items_ = std::move(sorted);
  sorted_ = true;
  return perm;
}

std::vector<std::size_t> WorkingList::discard_zero_vectors() {
  std::vector<std::size_t> kept;
  std::vector<TrackedVector> out;
  out.reserve(items_.size());
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i].vec.is_zero()) continue;
    kept.push_back(i);
    out.push_back(std::move(items_[i]));
  }
  items_ = std::move(out);
  return kept;
}

WorkingList WorkingList::from_sorted(std::vector<TrackedVector> items) {
  for (std::size_t i = 1; i < items.size(); ++i) {
    if (items[i].proj < items[i - 1].proj) throw ConfigError("list is not sorted by projection");
  }
  WorkingList list(std::move(items));
  list.sorted_ = true;
  return list;
}

}  // namespace sortreduce
