#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "polar/arithmetic.hpp"
#include "polar/bits.hpp"

namespace polar {

// One child of a decoding path: the parent slot, the hypothesised bit and
// the metric after the update.
template <typename T>
struct PathExtension {
  std::size_t parent = 0;
  Bit bit = 0;
  T pm{};
  friend bool operator==(const PathExtension&, const PathExtension&) = default;
};

// Total order used for every selection: (pm, parent, bit).
template <typename T>
bool extension_before(const PathExtension<T>& a, const PathExtension<T>& b) {
  return std::tie(a.pm, a.parent, a.bit) < std::tie(b.pm, b.parent, b.bit);
}

template <typename T>
struct DtsThresholds {
  T at{};
  T rt{};
  std::size_t rt_order_index = 0;
};

template <typename T>
struct PruneOutcome {
  std::vector<PathExtension<T>> survivors;
  std::size_t kept_by_rule1 = 0;
  std::size_t pruned_by_rule2 = 0;
  std::size_t filled_by_rule3 = 0;
  bool starved = false;
};

enum class PrunerKind { sort, dts };

// How DTS.3 picks from the [AT, RT] band: lowest scan index first (the
// priority-encoder circuit) or a seeded shuffle.
enum class Rule3Policy { priority, random };

// Exact list pruning: the `list_size` smallest extensions in (pm, parent, bit) order.
template <typename T>
std::vector<PathExtension<T>> lpo_sort(std::span<const PathExtension<T>> extensions, std::size_t list_size) {
  std::vector<PathExtension<T>> out(extensions.begin(), extensions.end());
  if (out.size() <= list_size) return out;
  std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(list_size), out.end(),
                    extension_before<T>);
  out.resize(list_size);
  return out;
}

// Double thresholding. Rule 1 keeps pm < AT, rule 2 drops pm > RT, rule 3
// fills from AT <= pm <= RT in scan order (or the shuffled order when rng
// is given) until list_size survivors exist.
//
// If rule 1 alone admits more than list_size extensions (only possible
// with thresholds not derived from the parent metrics) the first
// list_size of them in scan order are kept.
template <typename T>
PruneOutcome<T> lpo_dts(std::span<const PathExtension<T>> extensions, const DtsThresholds<T>& th,
                        std::size_t list_size, std::mt19937_64* rng = nullptr) {
  PruneOutcome<T> out;
  out.survivors.reserve(list_size);
  std::vector<std::size_t> band;
  band.reserve(extensions.size());
  for (std::size_t k = 0; k < extensions.size(); ++k) {
    const T pm = extensions[k].pm;
    if (pm < th.at) {
      if (out.survivors.size() < list_size) {
        out.survivors.push_back(extensions[k]);
        ++out.kept_by_rule1;
      }
    } else if (pm > th.rt) {
      ++out.pruned_by_rule2;
    } else {
      band.push_back(k);
    }
  }
  if (rng != nullptr) std::shuffle(band.begin(), band.end(), *rng);
  for (std::size_t k : band) {
    if (out.survivors.size() >= list_size) break;
    out.survivors.push_back(extensions[k]);
    ++out.filled_by_rule3;
  }
  out.starved = out.survivors.size() < list_size;
  return out;
}

// |{extensions with pm < threshold}|.
template <typename T>
std::size_t omega_cardinality(std::span<const PathExtension<T>> extensions, T threshold) {
  return static_cast<std::size_t>(std::count_if(extensions.begin(), extensions.end(),
                                                [&](const PathExtension<T>& e) { return e.pm < threshold; }));
}

// Largest value by a pairwise comparison tree; the input is padded to a
// power of two with the lowest representable value.
template <typename T>
T max_network(std::span<const T> values) {
  if (values.empty()) throw std::invalid_argument("max_network needs at least one value");
  std::vector<T> level(std::bit_ceil(values.size()), std::numeric_limits<T>::lowest());
  std::copy(values.begin(), values.end(), level.begin());
  while (level.size() > 1) {
    for (std::size_t j = 0; j < level.size() / 2; ++j) level[j] = std::max(level[2 * j], level[2 * j + 1]);
    level.resize(level.size() / 2);
  }
  return level[0];
}

// Second largest (multiset) value. Each tree node carries its (first,
// second) pair; merging keeps the larger first and the best runner-up.
template <typename T>
T second_max_network(std::span<const T> values) {
  if (values.size() < 2) throw std::invalid_argument("second_max_network needs at least two values");
  constexpr T low = std::numeric_limits<T>::lowest();
  std::vector<std::pair<T, T>> level(std::bit_ceil(values.size()), {low, low});
  for (std::size_t j = 0; j < values.size(); ++j) level[j] = {values[j], low};
  while (level.size() > 1) {
    for (std::size_t j = 0; j < level.size() / 2; ++j) {
      const auto [a1, a2] = level[2 * j];
      const auto [b1, b2] = level[2 * j + 1];
      level[j] = a1 >= b1 ? std::pair{a1, std::max(a2, b1)} : std::pair{b1, std::max(b2, a1)};
    }
    level.resize(level.size() / 2);
  }
  return level[0].second;
}

// Order statistic W/2 (0-based, upper median) of W values, W a power of
// two >= 2, by the halving network: sort both halves, then repeatedly
// compare the two sub-medians and keep the upper half of the side with
// the smaller one and the lower half of the other.
template <typename T>
T median_network(std::span<const T> values) {
  const std::size_t w = values.size();
  if (w < 2 || !std::has_single_bit(w)) throw std::invalid_argument("median_network needs a power-of-two count >= 2");
  const std::size_t k0 = w / 2;
  std::vector<T> a(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k0));
  std::vector<T> b(values.begin() + static_cast<std::ptrdiff_t>(k0), values.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());

  std::size_t a_lo = 0, b_lo = 0;
  for (std::size_t k = k0; k > 1; k /= 2) {
    const T ma = a[a_lo + k / 2];
    const T mb = b[b_lo + k / 2];
    if (ma == mb) return ma;
    if (ma < mb) a_lo += k / 2;
    else b_lo += k / 2;
  }
  return std::max(a[a_lo], b[b_lo]);
}

// Order statistic `index` (0-based) of the multiset.
template <typename T>
T order_statistic(std::span<const T> values, std::size_t index) {
  if (index >= values.size()) throw std::invalid_argument("order statistic index out of range");
  std::vector<T> v(values.begin(), values.end());
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(index), v.end());
  return v[index];
}

// (AT, RT) for the next bit from the current list metrics: AT is order
// statistic L/2, RT order statistic rt_order_index. Maximum and second
// maximum use their comparison trees, any other index a selection.
template <typename T>
DtsThresholds<T> track_thresholds(std::span<const T> pms, std::size_t rt_order_index) {
  const std::size_t list_size = pms.size();
  if (list_size < 2 || !std::has_single_bit(list_size))
    throw std::invalid_argument("threshold tracking needs a power-of-two list size >= 2");
  if (rt_order_index < list_size / 2 || rt_order_index >= list_size)
    throw std::invalid_argument("rt_order_index must lie in [L/2, L)");
  DtsThresholds<T> th;
  th.rt_order_index = rt_order_index;
  th.at = median_network(pms);
  if (rt_order_index == list_size - 1) th.rt = max_network(pms);
  else if (rt_order_index == list_size - 2) th.rt = second_max_network(pms);
  else th.rt = order_statistic(pms, rt_order_index);
  return th;
}

struct PrunerConfig {
  PrunerKind kind = PrunerKind::sort;
  // RT order statistic; unset (negative) means the second maximum, L - 2,
  // or L/2 when that is larger (L = 2).
  long rt_order_index = -1;
  Rule3Policy rule3 = Rule3Policy::priority;

  std::size_t resolved_rt_index(std::size_t list_size) const {
    if (rt_order_index >= 0) return static_cast<std::size_t>(rt_order_index);
    return list_size >= 4 ? list_size - 2 : list_size / 2;
  }
};

// Running totals of what the pruner did over a frame.
struct PruneStats {
  std::uint64_t lpo_count = 0;
  std::uint64_t kept_by_rule1 = 0;
  std::uint64_t pruned_by_rule2 = 0;
  std::uint64_t filled_by_rule3 = 0;
  std::uint64_t survivors = 0;
  std::uint64_t starved_lpos = 0;

  PruneStats& operator+=(const PruneStats& o) {
    lpo_count += o.lpo_count;
    kept_by_rule1 += o.kept_by_rule1;
    pruned_by_rule2 += o.pruned_by_rule2;
    filled_by_rule3 += o.filled_by_rule3;
    survivors += o.survivors;
    starved_lpos += o.starved_lpos;
    return *this;
  }
};

// Strategy object used by the list decoder at every information bit.
//
// `slot_pms` holds the metric of every list slot before extension, with
// metric_sentinel<T>() in empty slots; DTS thresholds come from it.
template <typename T>
class ListPruner {
 public:
  ListPruner(PrunerConfig cfg, std::size_t list_size) : cfg_(cfg), list_size_(list_size) {
    if (list_size == 0 || !std::has_single_bit(list_size)) throw std::invalid_argument("list size must be a power of two");
    if (cfg.kind == PrunerKind::dts && list_size >= 2) {
      const auto rt = cfg.resolved_rt_index(list_size);
      if (rt < list_size / 2 || rt >= list_size) throw std::invalid_argument("rt_order_index must lie in [L/2, L)");
    }
  }

  void reseed(std::uint64_t seed) { rng_.seed(seed); }
  const PrunerConfig& config() const { return cfg_; }

  std::vector<PathExtension<T>> prune(std::span<const PathExtension<T>> extensions, std::span<const T> slot_pms,
                                      PruneStats& stats) {
    ++stats.lpo_count;
    // DTS needs L >= 2; a list of one is always pruned exactly.
    if (cfg_.kind == PrunerKind::sort || list_size_ < 2) {
      auto survivors = lpo_sort(extensions, list_size_);
      stats.survivors += survivors.size();
      return survivors;
    }
    const auto th = track_thresholds(slot_pms, cfg_.resolved_rt_index(list_size_));
    auto outcome = lpo_dts(extensions, th, list_size_, cfg_.rule3 == Rule3Policy::random ? &rng_ : nullptr);
    stats.kept_by_rule1 += outcome.kept_by_rule1;
    stats.pruned_by_rule2 += outcome.pruned_by_rule2;
    stats.filled_by_rule3 += outcome.filled_by_rule3;
    stats.survivors += outcome.survivors.size();
    if (outcome.starved) ++stats.starved_lpos;
    return std::move(outcome.survivors);
  }

 private:
  PrunerConfig cfg_;
  std::size_t list_size_;
  std::mt19937_64 rng_{0};
};

}  // namespace polar
