#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "polar/polar_code.hpp"

namespace polar {

struct HardwareConfig {
  std::size_t pe_count = 64;  // M, processing elements per SC lane
  double clock_mhz = 641.0;
  bool frozen_sibling = true;
};

// 4N + (n - 2 - log2 M) N / M. Requires N a power of two >= 4 and M a
// power of two with M <= N/2.
std::int64_t cycles_closed_form(std::size_t N, std::size_t M);

// cycles_closed_form - 5 FS.
std::int64_t cycles_with_fs(std::size_t N, std::size_t M, std::size_t frozen_siblings);

// N * clock_mhz / cycles, in Mbps.
double throughput_mbps(std::int64_t cycles, std::size_t N, double clock_mhz);

struct ScheduleResult {
  std::int64_t cycles = 0;
  // Fewest free cycles between a metric update (DTS or frozen-sibling PMU)
  // and the next DTS that consumes the tracked thresholds; -1 when no DTS
  // follows another update.
  std::int64_t min_tta_slack = 0;
  // One label per cycle ("f3", "g1", "DTS", "LCP", "PMU") when requested.
  std::vector<std::string> trace;
};

// Walks the scheduling tree in decoding order. A node producing w LLRs
// costs ceil(w / M) cycles; each leaf is followed by DTS and LCP; with
// the frozen-sibling shortcut the leaf pair of a frozen sibling is one
// PMU cycle. The threshold tracker runs off the critical path.
ScheduleResult simulate_schedule(const PolarCode& code, const HardwareConfig& hw, bool record_trace = false);

struct CycleReport {
  std::int64_t closed_form_cycles = 0;
  std::int64_t simulated_cycles = 0;
  std::size_t fs_count = 0;
  double throughput_mbps = 0.0;
  friend bool operator==(const CycleReport&, const CycleReport&) = default;
};

CycleReport make_cycle_report(const PolarCode& code, const HardwareConfig& hw);

}  // namespace polar
