#include "polar/polar_code.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

namespace polar {

PolarCode::PolarCode(unsigned n, std::size_t info_count, std::vector<std::size_t> frozen_set, Crc crc)
    : n_(n), info_count_(info_count), crc_(crc), frozen_(std::move(frozen_set)) {
  if (n < 1 || n > 24) throw std::invalid_argument("code exponent n must be in [1, 24]");
  const std::size_t N = length();
  if (info_count > N) throw std::invalid_argument("K exceeds the code length");
  if (crc_.degree() >= info_count && crc_.enabled())
    throw std::invalid_argument("CRC length must be smaller than K");
  if (frozen_.size() != N - info_count)
    throw std::invalid_argument("frozen set must hold exactly N - K indices");

  frozen_mask_.assign(N, 0);
  for (std::size_t i : frozen_) {
    if (i >= N) throw std::invalid_argument("frozen index " + std::to_string(i) + " out of range");
    if (frozen_mask_[i]) throw std::invalid_argument("duplicate frozen index " + std::to_string(i));
    frozen_mask_[i] = 1;
  }
  std::sort(frozen_.begin(), frozen_.end());
  info_.reserve(info_count);
  for (std::size_t i = 0; i < N; ++i)
    if (!frozen_mask_[i]) info_.push_back(i);
}

std::vector<double> bhattacharyya_log_parameters(unsigned n, double log_z0) {
  // Index bits are consumed MSB first: the outermost butterfly pairs x_j with
  // x_{j+N/2}, so the top bit picks the worse (0) or better (1) channel first.
  std::vector<double> log_z{log_z0};
  for (unsigned level = 0; level < n; ++level) {
    std::vector<double> next(log_z.size() * 2);
    for (std::size_t j = 0; j < log_z.size(); ++j) {
      const double lz = log_z[j];
      // log(2z - z^2) = log z + log(2 - z)
      next[2 * j] = lz + std::log(2.0 - std::exp(lz));
      next[2 * j + 1] = 2.0 * lz;
    }
    log_z = std::move(next);
  }
  return log_z;
}

std::vector<std::size_t> construct_frozen_set(unsigned n, std::size_t info_count, double design_snr_db) {
  if (n < 1 || n > 24) throw std::invalid_argument("code exponent n must be in [1, 24]");
  const std::size_t N = std::size_t{1} << n;
  if (info_count == 0 || info_count > N) throw std::invalid_argument("K must satisfy 0 < K <= N");

  const double rate = static_cast<double>(info_count) / static_cast<double>(N);
  const double es_n0 = rate * std::pow(10.0, design_snr_db / 10.0);
  const auto log_z = bhattacharyya_log_parameters(n, -es_n0);

  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Least reliable (largest Z) first; ties resolved toward the lower index.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return log_z[a] > log_z[b]; });
  std::vector<std::size_t> frozen(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(N - info_count));
  std::sort(frozen.begin(), frozen.end());
  return frozen;
}

std::vector<std::size_t> parse_frozen_set(std::istream& in, std::size_t length) {
  std::vector<std::size_t> out;
  std::vector<Bit> seen(length, 0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) continue;
    std::string extra;
    if (fields >> extra) throw FormatError(line_no, "expected one index per line");
    if (!std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw FormatError(line_no, "'" + token + "' is not a non-negative decimal index");
    std::size_t value = 0;
    try {
      value = std::stoull(token);
    } catch (const std::out_of_range&) {
      throw FormatError(line_no, "index " + token + " out of range");
    }
    if (value >= length)
      throw FormatError(line_no, "index " + token + " >= N = " + std::to_string(length));
    if (seen[value]) throw FormatError(line_no, "duplicate index " + token);
    seen[value] = 1;
    out.push_back(value);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> load_frozen_set(const std::filesystem::path& path, std::size_t length) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open frozen-set file " + path.string());
  return parse_frozen_set(in, length);
}

SourceWord assemble_source_word(std::span<const Bit> payload, const PolarCode& code) {
  if (payload.size() != code.payload_count())
    throw std::invalid_argument("payload must hold K - r = " + std::to_string(code.payload_count()) + " bits");
  SourceWord u{Bits(code.length(), 0)};
  const auto& pos = code.info_positions();
  for (std::size_t k = 0; k < payload.size(); ++k) u.bits[pos[k]] = payload[k] & 1u;
  const Bits tail = code.crc().compute(payload);
  for (std::size_t k = 0; k < tail.size(); ++k) u.bits[pos[payload.size() + k]] = tail[k];
  return u;
}

Bits unfrozen_bits(const SourceWord& u, const PolarCode& code) {
  Bits out;
  out.reserve(code.info_count());
  for (std::size_t i : code.info_positions()) out.push_back(u.bits[i]);
  return out;
}

bool crc_passes(std::span<const Bit> u, const PolarCode& code) {
  if (!code.crc().enabled()) return true;
  Bits info;
  info.reserve(code.info_count());
  for (std::size_t i : code.info_positions()) info.push_back(u[i]);
  return code.crc().check(info);
}

void polar_transform(std::span<Bit> bits) {
  const std::size_t N = bits.size();
  for (std::size_t half = 1; half < N; half *= 2)
    for (std::size_t block = 0; block < N; block += 2 * half)
      for (std::size_t j = block; j < block + half; ++j) bits[j] ^= bits[j + half];
}

Codeword encode(const SourceWord& u) {
  Codeword x{u.bits};
  polar_transform(x.bits);
  return x;
}

std::size_t count_frozen_siblings(const PolarCode& code) {
  std::size_t count = 0;
  for (std::size_t j = 0; j + 1 < code.length(); j += 2)
    if (code.is_frozen(j) && code.is_frozen(j + 1)) ++count;
  return count;
}

PolarCode make_code(unsigned n, std::size_t info_count, Crc crc, double design_snr_db) {
  return PolarCode(n, info_count, construct_frozen_set(n, info_count, design_snr_db), crc);
}

}  // namespace polar
