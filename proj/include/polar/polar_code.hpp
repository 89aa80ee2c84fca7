#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "polar/bits.hpp"
#include "polar/crc.hpp"

namespace polar {

// Raised when a frozen-set file cannot be parsed; line() is 1-based.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Static description of an (N, K) polar code with an optional r-bit CRC.
//
// K counts every unfrozen position, CRC bits included, so the payload is
// K - r bits. Immutable once built.
class PolarCode {
 public:
  PolarCode(unsigned n, std::size_t info_count, std::vector<std::size_t> frozen_set, Crc crc = {});

  unsigned n() const { return n_; }
  std::size_t length() const { return std::size_t{1} << n_; }
  std::size_t info_count() const { return info_count_; }
  std::size_t payload_count() const { return info_count_ - crc_.degree(); }
  double rate() const { return static_cast<double>(info_count_) / static_cast<double>(length()); }
  const Crc& crc() const { return crc_; }

  // Ascending frozen indices.
  const std::vector<std::size_t>& frozen_set() const { return frozen_; }
  // Ascending unfrozen indices; payload first, CRC in the last r of them.
  const std::vector<std::size_t>& info_positions() const { return info_; }
  bool is_frozen(std::size_t i) const { return frozen_mask_[i] != 0; }

 private:
  unsigned n_;
  std::size_t info_count_;
  Crc crc_;
  std::vector<std::size_t> frozen_;
  std::vector<std::size_t> info_;
  std::vector<Bit> frozen_mask_;
};

// The N - K least reliable synthetic channels by Bhattacharyya-parameter
// evolution on the BI-AWGN channel. design_snr_db is Eb/N0 at rate K/N.
std::vector<std::size_t> construct_frozen_set(unsigned n, std::size_t info_count, double design_snr_db = 2.0);

// log Z of every synthetic channel (natural index order) for a base
// channel with parameter Z = exp(log_z0).
std::vector<double> bhattacharyya_log_parameters(unsigned n, double log_z0);

std::vector<std::size_t> parse_frozen_set(std::istream& in, std::size_t length);
std::vector<std::size_t> load_frozen_set(const std::filesystem::path& path, std::size_t length);

// Places payload then CRC on the unfrozen positions in ascending order.
SourceWord assemble_source_word(std::span<const Bit> payload, const PolarCode& code);

// The K unfrozen bits of u in ascending position order.
Bits unfrozen_bits(const SourceWord& u, const PolarCode& code);

// True when the unfrozen bits of u pass the code's CRC.
bool crc_passes(std::span<const Bit> u, const PolarCode& code);

// In-place x = u F^{(x)n} over GF(2), natural order, N log N butterflies.
void polar_transform(std::span<Bit> bits);

Codeword encode(const SourceWord& u);

// Number of j with both 2j and 2j+1 frozen.
std::size_t count_frozen_siblings(const PolarCode& code);

// Convenience: build a code from a Bhattacharyya construction.
PolarCode make_code(unsigned n, std::size_t info_count, Crc crc, double design_snr_db = 2.0);

}  // namespace polar
