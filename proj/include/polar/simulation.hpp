#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "polar/latency_model.hpp"
#include "polar/polar_code.hpp"
#include "polar/sim_config.hpp"

namespace polar {

struct FerResult {
  double snr_db = 0.0;
  std::uint64_t frames = 0;
  std::uint64_t frame_errors = 0;
  std::uint64_t bit_errors = 0;
  double fer = 0.0;
  double ber = 0.0;
  double fer_ci_lo = 0.0;
  double fer_ci_hi = 0.0;
  double rule3_fill_rate = 0.0;  // rule-3 picks / survivors over all pruning steps
  double starve_rate = 0.0;      // frames with at least one starved pruning step
  double crc_miss_rate = 0.0;    // frames where no list path passed the CRC
  CycleReport cycles;
  std::uint64_t seed = 0;
  friend bool operator==(const FerResult&, const FerResult&) = default;
};

// Wilson score interval for k successes out of n at z = 1.96.
std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double z = 1.959963984540054);

// Generator for frame `frame` of a run seeded with `seed`; independent of
// worker count and SNR point.
std::mt19937_64 frame_rng(std::uint64_t seed, std::uint64_t frame);

// One Monte Carlo point: frames run in index order until min_errors frame
// errors or max_frames. Frames are farmed to cfg.workers threads in fixed
// chunks and merged in index order, so the result depends only on the
// configuration and seed.
FerResult run_point(const SimConfig& cfg, const PolarCode& code, double snr_db);

std::vector<FerResult> run_sweep(const SimConfig& cfg);

// Same frames decoded by two configurations.
struct DivergenceResult {
  std::uint64_t frames = 0;
  std::uint64_t divergent_frames = 0;  // decoded source words differ
  std::uint64_t errors_a = 0;
  std::uint64_t errors_b = 0;
};

DivergenceResult compare_decoders(const SimConfig& a, const SimConfig& b, const PolarCode& code, double snr_db,
                                  std::uint64_t frames);

}  // namespace polar
