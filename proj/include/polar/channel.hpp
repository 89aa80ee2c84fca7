#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "polar/bits.hpp"

namespace polar {

// BI-AWGN channel at a given Eb/N0, with the rate factor folded into sigma.
struct ChannelParams {
  double snr_db;
  double rate;
  double sigma;

  // sigma^2 = 1 / (2 R 10^(snr/10)); +inf dB gives the noiseless channel.
  static ChannelParams from_ebn0(double snr_db, double rate);
};

struct ReceivedFrame {
  std::vector<double> samples;
};

// LLR magnitude handed out for the noiseless (sigma = 0) channel.
inline constexpr double kNoiselessLlr = 1.0e3;

// 0 -> +1, 1 -> -1.
std::vector<double> modulate(std::span<const Bit> bits);

ReceivedFrame add_awgn(std::span<const double> symbols, double sigma, std::mt19937_64& rng);

// L = 2y / sigma^2, positive favours bit 0. For sigma = 0 the sign of y
// is returned at noiseless_magnitude.
std::vector<double> channel_llr(const ReceivedFrame& y, double sigma, double noiseless_magnitude = kNoiselessLlr);

// round(L * scale), half away from zero, saturated to +-(2^(q-1) - 1).
std::int32_t quantize(double llr, unsigned q_bits, double scale);

std::vector<std::int32_t> quantize(std::span<const double> llrs, unsigned q_bits, double scale);

}  // namespace polar
