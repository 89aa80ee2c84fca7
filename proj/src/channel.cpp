#include "polar/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace polar {

ChannelParams ChannelParams::from_ebn0(double snr_db, double rate) {
  if (!(rate > 0.0) || rate > 1.0) throw std::invalid_argument("rate must lie in (0, 1]");
  if (std::isinf(snr_db) && snr_db > 0) return {snr_db, rate, 0.0};
  const double ebn0 = std::pow(10.0, snr_db / 10.0);
  return {snr_db, rate, std::sqrt(1.0 / (2.0 * rate * ebn0))};
}

std::vector<double> modulate(std::span<const Bit> bits) {
  std::vector<double> out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) out[i] = bits[i] ? -1.0 : 1.0;
  return out;
}

ReceivedFrame add_awgn(std::span<const double> symbols, double sigma, std::mt19937_64& rng) {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be non-negative");
  ReceivedFrame y{std::vector<double>(symbols.begin(), symbols.end())};
  if (sigma == 0.0) return y;
  std::normal_distribution<double> noise(0.0, sigma);
  for (double& s : y.samples) s += noise(rng);
  return y;
}

std::vector<double> channel_llr(const ReceivedFrame& y, double sigma, double noiseless_magnitude) {
  std::vector<double> out(y.samples.size());
  if (sigma == 0.0) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double v = y.samples[i];
      out[i] = v > 0.0 ? noiseless_magnitude : (v < 0.0 ? -noiseless_magnitude : 0.0);
    }
    return out;
  }
  const double gain = 2.0 / (sigma * sigma);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = gain * y.samples[i];
  return out;
}

std::int32_t quantize(double llr, unsigned q_bits, double scale) {
  if (q_bits < 2 || q_bits > 31) throw std::invalid_argument("quantizer width must be in [2, 31]");
  const double limit = static_cast<double>((std::int64_t{1} << (q_bits - 1)) - 1);
  const double r = std::round(llr * scale);  // half away from zero
  if (std::isnan(r)) return 0;
  if (r > limit) return static_cast<std::int32_t>(limit);
  if (r < -limit) return static_cast<std::int32_t>(-limit);
  return static_cast<std::int32_t>(r);
}

std::vector<std::int32_t> quantize(std::span<const double> llrs, unsigned q_bits, double scale) {
  std::vector<std::int32_t> out(llrs.size());
  for (std::size_t i = 0; i < llrs.size(); ++i) out[i] = quantize(llrs[i], q_bits, scale);
  return out;
}

}  // namespace polar
