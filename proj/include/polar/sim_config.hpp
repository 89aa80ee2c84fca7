#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polar/decoder.hpp"
#include "polar/latency_model.hpp"
#include "polar/polar_code.hpp"

namespace polar {

inline constexpr const char* kToolVersion = "0.1.0";

enum class OutputFormat { csv, json };

// Which bits decide a frame error: the whole source word, or only the payload.
enum class ErrorScope { source_word, payload };

struct SimConfig {
  // code
  unsigned n = 10;
  std::size_t k = 512;
  unsigned crc_bits = 16;
  std::optional<std::uint64_t> crc_poly;
  std::string frozen_file;
  double design_snr_db = 2.0;

  DecoderConfig decoder{};

  std::vector<double> snr_db{2.0};
  std::uint64_t min_errors = 100;
  std::uint64_t max_frames = 10'000'000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  ErrorScope error_scope = ErrorScope::source_word;

  // frozen_sibling here is ignored; the decoder's flag drives the cycle model.
  HardwareConfig hardware{};

  std::string out = "-";
  OutputFormat format = OutputFormat::csv;

  // Throws std::invalid_argument describing the first bad field.
  void validate() const;

  Crc make_crc() const;
  // Loads or constructs the frozen set and builds the code.
  PolarCode make_code() const;
};

std::string to_string(OutputFormat f);
std::string to_string(ErrorScope s);

}  // namespace polar
