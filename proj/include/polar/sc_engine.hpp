#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "polar/arithmetic.hpp"
#include "polar/bits.hpp"
#include "polar/polar_code.hpp"

namespace polar {

enum class FNodeRule { min_sum, exact };

// Hard decision: 0 for L >= 0, 1 otherwise.
template <typename T>
constexpr Bit hard_decision(T llr) {
  return llr < T{0} ? Bit{1} : Bit{0};
}

template <typename T>
constexpr T magnitude(T v) {
  return v < T{0} ? -v : v;
}

// Min-sum check-node update, sign(0) = +1.
template <typename T>
constexpr T f_node(T a, T b) {
  const T m = std::min(magnitude(a), magnitude(b));
  return ((a < T{0}) != (b < T{0})) ? -m : m;
}

// 2 atanh(tanh(a/2) tanh(b/2)) in the overflow-free correction form.
inline double f_node_exact(double a, double b) {
  const double approx = f_node(a, b);
  return approx + std::log1p(std::exp(-std::abs(a + b))) - std::log1p(std::exp(-std::abs(a - b)));
}

template <typename T>
constexpr T g_node(T a, T b, Bit u) {
  return u ? b - a : b + a;
}

template <typename T>
constexpr T g_node(T a, T b, Bit u, const Arithmetic<T>& arith) {
  return arith.saturate_llr(g_node(a, b, u));
}

namespace detail {

template <typename T>
T f_apply(T a, T b, FNodeRule rule) {
  if constexpr (std::is_floating_point_v<T>) {
    if (rule == FNodeRule::exact) return static_cast<T>(f_node_exact(a, b));
  }
  return f_node(a, b);
}

// One scheduling-tree node: out[j] from in[j] and in[j + out.size()].
template <typename T>
void left_child(std::span<const T> in, std::span<T> out, FNodeRule rule) {
  const std::size_t half = out.size();
  for (std::size_t j = 0; j < half; ++j) out[j] = f_apply(in[j], in[j + half], rule);
}

template <typename T>
void right_child(std::span<const T> in, std::span<const Bit> partial, std::span<T> out,
                 const Arithmetic<T>& arith) {
  const std::size_t half = out.size();
  for (std::size_t j = 0; j < half; ++j) out[j] = g_node(in[j], in[j + half], partial[j], arith);
}

// First stage whose node changes when moving to leaf i (0 for i = 0).
inline unsigned first_dirty_stage(std::size_t i, unsigned n) {
  return i == 0 ? 0u : n - 1u - static_cast<unsigned>(std::countr_zero(i));
}

// True when the node at stage s + 1 on the path to leaf i is a right child.
inline bool takes_right_branch(std::size_t i, unsigned s, unsigned n) {
  return ((i >> (n - 1 - s)) & 1u) != 0;
}

}  // namespace detail

// Successive-cancellation decoder with per-stage LLR and partial-sum
// memories. Stage s holds N / 2^s LLRs; stage 0 is the channel input.
// partial(s) holds the re-encoded bits of the left child of the active
// stage-s node, N / 2^(s+1) of them.
template <typename T>
class ScDecoder {
 public:
  explicit ScDecoder(const PolarCode& code, Arithmetic<T> arith = {}, FNodeRule rule = FNodeRule::min_sum)
      : code_(&code), arith_(arith), rule_(rule), n_(code.n()) {
    const std::size_t N = code.length();
    for (unsigned s = 0; s <= n_; ++s) llr_.emplace_back(N >> s);
    for (unsigned s = 0; s < n_; ++s) partial_.emplace_back(N >> (s + 1));
    scratch_.reserve(N);
  }

  void reset(std::span<const T> channel_llrs) {
    if (channel_llrs.size() != code_->length()) throw std::invalid_argument("expected N channel LLRs");
    std::copy(channel_llrs.begin(), channel_llrs.end(), llr_[0].begin());
    index_ = 0;
    decided_.clear();
  }

  std::size_t index() const { return index_; }

  // L_i^n for the current bit i, given the decisions committed so far.
  T next_leaf_llr() {
    descend(n_);
    return llr_[n_][0];
  }

  // Computes stages down to `stage` for the current bit.
  void descend(unsigned stage) {
    for (unsigned s = detail::first_dirty_stage(index_, n_); s < stage; ++s) {
      if (detail::takes_right_branch(index_, s, n_))
        detail::right_child<T>(llr_[s], partial_[s], llr_[s + 1], arith_);
      else
        detail::left_child<T>(llr_[s], llr_[s + 1], rule_);
    }
  }

  void commit(Bit u) {
    decided_.push_back(u);
    propagate_partial_sums(index_, u, partial_, scratch_, n_);
    ++index_;
  }

  SourceWord decode(std::span<const T> channel_llrs) {
    reset(channel_llrs);
    for (std::size_t i = 0; i < code_->length(); ++i) {
      const T l = next_leaf_llr();
      commit(code_->is_frozen(i) ? Bit{0} : hard_decision(l));
    }
    return SourceWord{decided_};
  }

  std::span<const T> stage_llrs(unsigned s) const { return llr_[s]; }
  std::span<const Bit> partial_sums(unsigned s) const { return partial_[s]; }
  const Bits& decided() const { return decided_; }

  // Folds decision u for leaf i into the partial sums: climbs while the
  // finished node is a right child, stores the encoded block at the first
  // left child.
  template <typename Banks>
  static void propagate_partial_sums(std::size_t i, Bit u, Banks& partial, Bits& scratch, unsigned n) {
    scratch.assign(1, u);
    for (unsigned s = n; s-- > 0;) {
      auto&& left = partial[s];
      if (!detail::takes_right_branch(i, s, n)) {
        std::copy(scratch.begin(), scratch.end(), left.begin());
        return;
      }
      const std::size_t w = scratch.size();
      scratch.resize(2 * w);
      for (std::size_t j = 0; j < w; ++j) {
        scratch[w + j] = scratch[j];
        scratch[j] = static_cast<Bit>(left[j] ^ scratch[j]);
      }
    }
  }

 private:
  const PolarCode* code_;
  Arithmetic<T> arith_;
  FNodeRule rule_;
  unsigned n_;
  std::vector<std::vector<T>> llr_;
  std::vector<Bits> partial_;
  Bits scratch_;
  Bits decided_;
  std::size_t index_ = 0;
};

// L_i^n for i = decided_prefix.size().
template <typename T>
T leaf_llr(const PolarCode& code, std::span<const T> channel_llrs, std::span<const Bit> decided_prefix,
           Arithmetic<T> arith = {}, FNodeRule rule = FNodeRule::min_sum) {
  if (decided_prefix.size() >= code.length()) throw std::invalid_argument("prefix must be shorter than N");
  ScDecoder<T> dec(code, arith, rule);
  dec.reset(channel_llrs);
  for (Bit b : decided_prefix) {
    dec.next_leaf_llr();
    dec.commit(b);
  }
  return dec.next_leaf_llr();
}

template <typename T>
SourceWord sc_decode(const PolarCode& code, std::span<const T> channel_llrs, Arithmetic<T> arith = {},
                     FNodeRule rule = FNodeRule::min_sum) {
  ScDecoder<T> dec(code, arith, rule);
  return dec.decode(channel_llrs);
}

}  // namespace polar
