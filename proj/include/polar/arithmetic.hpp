#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace polar {

enum class ArithMode { floating, fixed };

// Saturation bounds for internal LLRs and path metrics.
//
// T = double runs unbounded (infinite limits); T = int32_t models the
// hardware word lengths. The same decoder code serves both.
template <typename T>
struct Arithmetic {
  T llr_limit = std::numeric_limits<T>::has_infinity ? std::numeric_limits<T>::infinity()
                                                     : std::numeric_limits<T>::max();
  T pm_limit = std::numeric_limits<T>::has_infinity ? std::numeric_limits<T>::infinity()
                                                    : std::numeric_limits<T>::max();

  constexpr T saturate_llr(T v) const { return std::clamp(v, -llr_limit, llr_limit); }

  // Saturate-and-hold accumulation; inc must be non-negative.
  constexpr T add_pm(T pm, T inc) const {
    if (pm >= pm_limit || inc >= pm_limit - pm) return pm_limit;
    return pm + inc;
  }
};

inline Arithmetic<double> floating_arithmetic() { return {}; }

// Channel LLRs of q_channel bits, internal LLRs of q_channel + 2 bits,
// unsigned path metrics of q_pm bits.
inline Arithmetic<std::int32_t> fixed_arithmetic(unsigned q_channel = 6, unsigned q_pm = 8) {
  if (q_channel < 2 || q_channel > 28) throw std::invalid_argument("q_channel must be in [2, 28]");
  if (q_pm < 1 || q_pm > 30) throw std::invalid_argument("q_pm must be in [1, 30]");
  Arithmetic<std::int32_t> a;
  a.llr_limit = (std::int32_t{1} << (q_channel + 1)) - 1;
  a.pm_limit = (std::int32_t{1} << q_pm) - 1;
  return a;
}

// Value that orders above every representable path metric.
template <typename T>
constexpr T metric_sentinel() {
  if constexpr (std::numeric_limits<T>::has_infinity) return std::numeric_limits<T>::infinity();
  else return std::numeric_limits<T>::max();
}

}  // namespace polar
