#include "polar/latency_model.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

#include "polar/sc_engine.hpp"

namespace polar {
namespace {

void validate(std::size_t N, std::size_t M) {
  if (N < 4 || !std::has_single_bit(N)) throw std::invalid_argument("N must be a power of two >= 4");
  if (M == 0 || !std::has_single_bit(M)) throw std::invalid_argument("PE count M must be a power of two");
  if (M > N / 2) throw std::invalid_argument("PE count M must not exceed N/2");
}

}  // namespace

std::int64_t cycles_closed_form(std::size_t N, std::size_t M) {
  validate(N, M);
  const auto n = static_cast<std::int64_t>(std::countr_zero(N));
  const auto m = static_cast<std::int64_t>(std::countr_zero(M));
  const auto N_ = static_cast<std::int64_t>(N);
  return 4 * N_ + (n - 2 - m) * (N_ / static_cast<std::int64_t>(M));
}

std::int64_t cycles_with_fs(std::size_t N, std::size_t M, std::size_t frozen_siblings) {
  if (frozen_siblings > N / 2) throw std::invalid_argument("frozen-sibling count exceeds N/2");
  return cycles_closed_form(N, M) - 5 * static_cast<std::int64_t>(frozen_siblings);
}

double throughput_mbps(std::int64_t cycles, std::size_t N, double clock_mhz) {
  if (cycles <= 0) throw std::invalid_argument("cycle count must be positive");
  return static_cast<double>(N) * clock_mhz / static_cast<double>(cycles);
}

ScheduleResult simulate_schedule(const PolarCode& code, const HardwareConfig& hw, bool record_trace) {
  const std::size_t N = code.length();
  const std::size_t M = hw.pe_count;
  validate(N, M);
  const unsigned n = code.n();

  ScheduleResult r;
  r.min_tta_slack = std::numeric_limits<std::int64_t>::max();
  std::int64_t last_update = -1;  // cycle of the last metric update

  auto emit = [&](const std::string& label) {
    if (record_trace) r.trace.push_back(label);
    ++r.cycles;
  };
  auto node = [&](std::size_t i, unsigned s) {
    const std::size_t width = N >> (s + 1);
    const std::size_t cost = (width + M - 1) / M;
    const std::string label = (detail::takes_right_branch(i, s, n) ? "g" : "f") + std::to_string(s + 1);
    for (std::size_t c = 0; c < cost; ++c) emit(label);
  };
  auto metric_update = [&](const char* label, bool consumes_thresholds) {
    if (consumes_thresholds && last_update >= 0) r.min_tta_slack = std::min(r.min_tta_slack, r.cycles - last_update - 1);
    last_update = r.cycles;
    emit(label);
  };

  for (std::size_t i = 0; i < N;) {
    const unsigned first = detail::first_dirty_stage(i, n);
    if (hw.frozen_sibling && i % 2 == 0 && code.is_frozen(i) && code.is_frozen(i + 1)) {
      for (unsigned s = first; s + 1 < n; ++s) node(i, s);
      metric_update("PMU", false);
      i += 2;
      continue;
    }
    for (unsigned s = first; s < n; ++s) node(i, s);
    metric_update("DTS", true);
    emit("LCP");
    ++i;
  }
  if (r.min_tta_slack == std::numeric_limits<std::int64_t>::max()) r.min_tta_slack = -1;
  return r;
}

CycleReport make_cycle_report(const PolarCode& code, const HardwareConfig& hw) {
  CycleReport rep;
  rep.fs_count = hw.frozen_sibling ? count_frozen_siblings(code) : 0;
  rep.closed_form_cycles = cycles_with_fs(code.length(), hw.pe_count, rep.fs_count);
  rep.simulated_cycles = simulate_schedule(code, hw).cycles;
  rep.throughput_mbps = throughput_mbps(rep.simulated_cycles, code.length(), hw.clock_mhz);
  return rep;
}

}  // namespace polar
