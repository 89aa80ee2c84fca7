#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "polar/arithmetic.hpp"
#include "polar/bits.hpp"
#include "polar/polar_code.hpp"
#include "polar/pruning.hpp"
#include "polar/sc_engine.hpp"

namespace polar {

// Path-metric update: the hardware form (penalty |L| on disagreement with
// the hard decision) or the exact log(1 + e^{(2u-1)L}).
enum class PmuRule { approx, exact };

template <typename T>
T pmu_hw(T pm, T llr, Bit u, const Arithmetic<T>& arith = {}) {
  return u == hard_decision(llr) ? pm : arith.add_pm(pm, magnitude(llr));
}

inline double pmu_exact(double pm, double llr, Bit u) {
  const double x = u ? llr : -llr;
  // softplus(x) = max(x, 0) + log1p(e^{-|x|})
  return pm + std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

template <typename T>
T pmu(T pm, T llr, Bit u, PmuRule rule, const Arithmetic<T>& arith) {
  if constexpr (std::is_floating_point_v<T>) {
    if (rule == PmuRule::exact) return static_cast<T>(pmu_exact(pm, llr, u));
  }
  return pmu_hw(pm, llr, u, arith);
}

// Both bits of the sibling frozen to 0: one update from the two parent
// LLRs, penalising each negative one by its magnitude.
template <typename T>
T pmu_frozen_sibling(T pm, T llr0, T llr1, const Arithmetic<T>& arith = {}) {
  pm = arith.add_pm(pm, llr0 < T{0} ? -llr0 : T{0});
  return arith.add_pm(pm, llr1 < T{0} ? -llr1 : T{0});
}

// Two children per active slot, parent-major with bit 0 first.
template <typename T>
void extend_paths(std::span<const T> pms, std::span<const T> leaf_llrs, std::span<const Bit> active, PmuRule rule,
                  const Arithmetic<T>& arith, std::vector<PathExtension<T>>& out) {
  out.clear();
  for (std::size_t l = 0; l < pms.size(); ++l) {
    if (!active[l]) continue;
    out.push_back({l, 0, pmu(pms[l], leaf_llrs[l], Bit{0}, rule, arith)});
    out.push_back({l, 1, pmu(pms[l], leaf_llrs[l], Bit{1}, rule, arith)});
  }
}

// Frozen bit: every active path takes u = 0, no pruning.
template <typename T>
void apply_frozen_bit(std::span<T> pms, std::span<const T> leaf_llrs, std::span<const Bit> active, PmuRule rule,
                      const Arithmetic<T>& arith) {
  for (std::size_t l = 0; l < pms.size(); ++l)
    if (active[l]) pms[l] = pmu(pms[l], leaf_llrs[l], Bit{0}, rule, arith);
}

// Per-stage LLR and partial-sum banks shared between list slots by
// reference count. A slot that is about to overwrite a shared bank is
// first detached onto a private one; a bank is only ever written whole,
// so detaching needs no data movement.
template <typename T>
class PathBanks {
 public:
  PathBanks(unsigned n, std::size_t list_size) : n_(n), list_size_(list_size) {
    const std::size_t N = std::size_t{1} << n;
    llr_.resize(n + 1);
    partial_.resize(n);
    for (unsigned s = 1; s <= n; ++s) llr_[s].init(N >> s, list_size);
    for (unsigned s = 0; s < n; ++s) partial_[s].init(N >> (s + 1), list_size);
    llr_ref_.assign(list_size, std::vector<std::size_t>(n + 1, kNone));
    partial_ref_.assign(list_size, std::vector<std::size_t>(n, kNone));
    active_.assign(list_size, 0);
  }

  // Slot 0 alive with private banks, all other slots empty.
  void reset() {
    for (auto& p : llr_) p.clear();
    for (auto& p : partial_) p.clear();
    std::fill(active_.begin(), active_.end(), Bit{0});
    for (auto& r : llr_ref_) std::fill(r.begin(), r.end(), kNone);
    for (auto& r : partial_ref_) std::fill(r.begin(), r.end(), kNone);
    active_[0] = 1;
    for (unsigned s = 1; s <= n_; ++s) llr_ref_[0][s] = llr_[s].allocate();
    for (unsigned s = 0; s < n_; ++s) partial_ref_[0][s] = partial_[s].allocate();
    detached_ = 0;
  }

  std::span<const Bit> active() const { return active_; }
  bool is_active(std::size_t slot) const { return active_[slot] != 0; }
  std::size_t active_count() const { return static_cast<std::size_t>(std::count(active_.begin(), active_.end(), Bit{1})); }

  std::span<const T> llr(std::size_t slot, unsigned s) const { return llr_[s].view(llr_ref_[slot][s]); }
  std::span<T> llr_for_write(std::size_t slot, unsigned s) { return llr_[s].writable(llr_ref_[slot][s], detached_); }
  std::span<const Bit> partial(std::size_t slot, unsigned s) const { return partial_[s].view(partial_ref_[slot][s]); }
  std::span<Bit> partial_for_write(std::size_t slot, unsigned s) {
    return partial_[s].writable(partial_ref_[slot][s], detached_);
  }

  void kill(std::size_t slot) {
    if (!active_[slot]) throw std::logic_error("killing an inactive path");
    for (unsigned s = 1; s <= n_; ++s) llr_[s].release(llr_ref_[slot][s]);
    for (unsigned s = 0; s < n_; ++s) partial_[s].release(partial_ref_[slot][s]);
    active_[slot] = 0;
  }

  // New slot (the lowest empty one) aliasing every bank of `slot`.
  std::size_t clone(std::size_t slot) {
    const auto it = std::find(active_.begin(), active_.end(), Bit{0});
    if (it == active_.end()) throw std::logic_error("no free path slot for clone");
    const auto child = static_cast<std::size_t>(it - active_.begin());
    for (unsigned s = 1; s <= n_; ++s) llr_[s].share(llr_ref_[child][s] = llr_ref_[slot][s]);
    for (unsigned s = 0; s < n_; ++s) partial_[s].share(partial_ref_[child][s] = partial_ref_[slot][s]);
    active_[child] = 1;
    return child;
  }

  // Number of banks detached (copy-on-write events) since reset().
  std::uint64_t banks_copied() const { return detached_; }

  // Bank indices in use by a slot; equal indices mean shared storage.
  std::size_t llr_bank(std::size_t slot, unsigned s) const { return llr_ref_[slot][s]; }
  std::size_t partial_bank(std::size_t slot, unsigned s) const { return partial_ref_[slot][s]; }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  template <typename V>
  struct Pool {
    std::size_t width = 0;
    std::vector<V> data;
    std::vector<std::uint32_t> refs;

    void init(std::size_t w, std::size_t count) {
      width = w;
      data.assign(w * count, V{});
      refs.assign(count, 0);
    }
    void clear() { std::fill(refs.begin(), refs.end(), 0u); }
    std::size_t allocate() {
      const auto it = std::find(refs.begin(), refs.end(), 0u);
      if (it == refs.end()) throw std::logic_error("bank pool exhausted");
      *it = 1;
      return static_cast<std::size_t>(it - refs.begin());
    }
    void share(std::size_t b) { ++refs[b]; }
    void release(std::size_t b) { --refs[b]; }
    std::span<const V> view(std::size_t b) const { return {data.data() + b * width, width}; }
    std::span<V> writable(std::size_t& b, std::uint64_t& detached) {
      if (refs[b] > 1) {
        --refs[b];
        b = allocate();
        ++detached;
      }
      return {data.data() + b * width, width};
    }
  };

  unsigned n_;
  std::size_t list_size_;
  std::vector<Pool<T>> llr_;  // index 0 unused: stage 0 is the shared channel input
  std::vector<Pool<Bit>> partial_;
  std::vector<std::vector<std::size_t>> llr_ref_;
  std::vector<std::vector<std::size_t>> partial_ref_;
  Bits active_;
  std::uint64_t detached_ = 0;
};

struct ListDecoderOptions {
  std::size_t list_size = 8;
  PrunerConfig pruner{};
  PmuRule pmu = PmuRule::approx;
  FNodeRule f_rule = FNodeRule::min_sum;
  bool frozen_sibling = true;
};

struct ListDiagnostics {
  std::vector<double> final_pms;  // active slots, ascending slot order
  Bits crc_pass;                  // same order as final_pms
  bool crc_fallback = false;      // no path passed; minimum-pm path returned
  std::size_t winner_slot = 0;
  PruneStats prune;
  std::uint64_t banks_copied = 0;
  std::uint64_t frozen_siblings_taken = 0;
};

struct ListDecodeResult {
  SourceWord word;
  ListDiagnostics diag;
};

// CRC-aided successive-cancellation list decoder with lazy copy.
//
// Slot policy after each pruning step: slots with no surviving child are
// freed first; then, in ascending slot order, a slot with one survivor
// takes that bit and a slot with two keeps bit 0 and hands bit 1 to a
// clone placed in the lowest free slot.
template <typename T>
class ListDecoder {
 public:
  ListDecoder(const PolarCode& code, ListDecoderOptions opts, Arithmetic<T> arith = {})
      : code_(&code),
        opts_(opts),
        arith_(arith),
        pruner_(opts.pruner, opts.list_size),
        banks_(code.n(), opts.list_size),
        n_(code.n()) {
    if (opts.frozen_sibling && (opts.pmu != PmuRule::approx || opts.f_rule != FNodeRule::min_sum))
      throw std::invalid_argument("the frozen-sibling shortcut requires min-sum f nodes and the hardware PMU");
    if constexpr (!std::is_floating_point_v<T>) {
      if (opts.pmu == PmuRule::exact || opts.f_rule == FNodeRule::exact)
        throw std::invalid_argument("exact PMU / f node are only available in floating mode");
    }
    const std::size_t L = opts.list_size;
    pms_.assign(L, T{});
    slot_pms_.assign(L, T{});
    leaf_.assign(L, T{});
    decided_.assign(L, Bits{});
    for (auto& d : decided_) d.reserve(code.length());
  }

  const ListDecoderOptions& options() const { return opts_; }

  // Reseeds the random rule-3 policy; no effect otherwise.
  void reseed(std::uint64_t seed) { pruner_.reseed(seed); }

  ListDecodeResult decode(std::span<const T> channel_llrs) {
    const std::size_t N = code_->length();
    if (channel_llrs.size() != N) throw std::invalid_argument("expected N channel LLRs");
    channel_ = channel_llrs;
    banks_.reset();
    std::fill(pms_.begin(), pms_.end(), T{});
    for (auto& d : decided_) d.clear();
    ListDiagnostics diag;

    for (std::size_t i = 0; i < N;) {
      if (opts_.frozen_sibling && i % 2 == 0 && code_->is_frozen(i) && code_->is_frozen(i + 1)) {
        for (std::size_t l = 0; l < pms_.size(); ++l) {
          if (!banks_.is_active(l)) continue;
          descend(l, i, n_ - 1);
          const auto parent = stage(l, n_ - 1);
          pms_[l] = pmu_frozen_sibling(pms_[l], parent[0], parent[1], arith_);
          commit(l, i, 0);
          commit(l, i + 1, 0);
        }
        ++diag.frozen_siblings_taken;
        i += 2;
        continue;
      }

      for (std::size_t l = 0; l < pms_.size(); ++l)
        if (banks_.is_active(l)) leaf_[l] = descend(l, i, n_);

      if (code_->is_frozen(i)) {
        apply_frozen_bit<T>(pms_, leaf_, banks_.active(), opts_.pmu, arith_);
        for (std::size_t l = 0; l < pms_.size(); ++l)
          if (banks_.is_active(l)) commit(l, i, 0);
      } else {
        extend_paths<T>(pms_, leaf_, banks_.active(), opts_.pmu, arith_, extensions_);
        if (extensions_.size() <= opts_.list_size) {
          apply_survivors(extensions_, i);
        } else {
          for (std::size_t l = 0; l < pms_.size(); ++l)
            slot_pms_[l] = banks_.is_active(l) ? pms_[l] : metric_sentinel<T>();
          const auto survivors = pruner_.prune(extensions_, slot_pms_, diag.prune);
          apply_survivors(survivors, i);
        }
      }
      ++i;
    }

    select_output(diag);
    diag.banks_copied = banks_.banks_copied();
    return {SourceWord{decided_[diag.winner_slot]}, std::move(diag)};
  }

  // Banks and metrics after the last decode(), for inspection in tests.
  const PathBanks<T>& banks() const { return banks_; }
  std::span<const T> path_metrics() const { return pms_; }

 private:
  // Brings the slot's stage memories to leaf i down to `stage`.
  T descend(std::size_t slot, std::size_t i, unsigned target) {
    for (unsigned s = detail::first_dirty_stage(i, n_); s < target; ++s) {
      const auto in = stage(slot, s);
      auto out = banks_.llr_for_write(slot, s + 1);
      if (detail::takes_right_branch(i, s, n_))
        detail::right_child<T>(in, banks_.partial(slot, s), out, arith_);
      else
        detail::left_child<T>(in, out, opts_.f_rule);
    }
    return stage(slot, target)[0];
  }

  std::span<const T> stage(std::size_t slot, unsigned s) const { return s == 0 ? channel_ : banks_.llr(slot, s); }

  void commit(std::size_t slot, std::size_t i, Bit u) {
    decided_[slot].push_back(u);
    scratch_.assign(1, u);
    for (unsigned s = n_; s-- > 0;) {
      if (!detail::takes_right_branch(i, s, n_)) {
        auto dst = banks_.partial_for_write(slot, s);
        std::copy(scratch_.begin(), scratch_.end(), dst.begin());
        return;
      }
      const auto left = banks_.partial(slot, s);
      const std::size_t w = scratch_.size();
      scratch_.resize(2 * w);
      for (std::size_t j = 0; j < w; ++j) {
        scratch_[w + j] = scratch_[j];
        scratch_[j] = static_cast<Bit>(left[j] ^ scratch_[j]);
      }
    }
  }

  void apply_survivors(std::span<const PathExtension<T>> survivors, std::size_t i) {
    const std::size_t L = pms_.size();
    if (survivors.size() > L) throw std::logic_error("more survivors than list slots");
    child_pm_.assign(2 * L, T{});
    has_child_.assign(2 * L, 0);
    for (const auto& e : survivors) {
      has_child_[2 * e.parent + e.bit] = 1;
      child_pm_[2 * e.parent + e.bit] = e.pm;
    }
    for (std::size_t l = 0; l < L; ++l)
      if (banks_.is_active(l) && !has_child_[2 * l] && !has_child_[2 * l + 1]) banks_.kill(l);

    // Snapshot: clones land in slots that are not revisited below.
    active_snapshot_.assign(banks_.active().begin(), banks_.active().end());
    for (std::size_t l = 0; l < L; ++l) {
      if (!active_snapshot_[l]) continue;
      const bool keep0 = has_child_[2 * l] != 0;
      const bool keep1 = has_child_[2 * l + 1] != 0;
      if (keep0 && keep1) {
        const std::size_t c = banks_.clone(l);
        decided_[c] = decided_[l];
        pms_[c] = child_pm_[2 * l + 1];
        pms_[l] = child_pm_[2 * l];
        commit(l, i, 0);
        commit(c, i, 1);
      } else {
        const Bit b = keep1 ? 1 : 0;
        pms_[l] = child_pm_[2 * l + b];
        commit(l, i, b);
      }
    }
  }

  void select_output(ListDiagnostics& diag) const {
    constexpr auto none = std::numeric_limits<std::size_t>::max();
    std::size_t best_crc = none, best_any = none;
    for (std::size_t l = 0; l < pms_.size(); ++l) {
      if (!banks_.is_active(l)) continue;
      const bool pass = crc_passes(decided_[l], *code_);
      diag.final_pms.push_back(static_cast<double>(pms_[l]));
      diag.crc_pass.push_back(pass ? 1 : 0);
      if (best_any == none || pms_[l] < pms_[best_any]) best_any = l;
      if (pass && (best_crc == none || pms_[l] < pms_[best_crc])) best_crc = l;
    }
    diag.crc_fallback = best_crc == none;
    diag.winner_slot = diag.crc_fallback ? best_any : best_crc;
  }

  const PolarCode* code_;
  ListDecoderOptions opts_;
  Arithmetic<T> arith_;
  ListPruner<T> pruner_;
  PathBanks<T> banks_;
  unsigned n_;
  std::span<const T> channel_;
  std::vector<T> pms_;
  std::vector<T> slot_pms_;
  std::vector<T> leaf_;
  std::vector<Bits> decided_;
  std::vector<PathExtension<T>> extensions_;
  std::vector<T> child_pm_;
  Bits has_child_;
  Bits active_snapshot_;
  Bits scratch_;
};

template <typename T>
ListDecodeResult scl_decode(const PolarCode& code, std::span<const T> channel_llrs, ListDecoderOptions opts,
                            Arithmetic<T> arith = {}) {
  ListDecoder<T> dec(code, opts, arith);
  return dec.decode(channel_llrs);
}

}  // namespace polar
