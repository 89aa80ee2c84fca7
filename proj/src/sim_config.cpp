#include "polar/sim_config.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace polar {

void SimConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (n < 2 || n > 20) fail("--n must be in [2, 20]");
  const std::size_t N = std::size_t{1} << n;
  if (k == 0 || k > N) fail("--k must satisfy 0 < K <= N");
  if (crc_bits >= k) fail("--crc-bits must be smaller than K");
  if (crc_poly && crc_bits == 0) fail("--crc-poly given without --crc-bits");
  make_crc();

  const auto& d = decoder;
  if (d.kind == DecoderKind::scl) {
    const std::size_t L = d.list.list_size;
    if (L == 0 || !std::has_single_bit(L)) fail("--list-size must be a power of two");
    if (d.list.pruner.kind == PrunerKind::dts && L >= 2) {
      const auto rt = d.list.pruner.resolved_rt_index(L);
      if (rt < L / 2 || rt >= L) fail("--rt-index must lie in [L/2, L)");
    }
  }
  if (d.list.frozen_sibling && (d.list.pmu != PmuRule::approx || d.list.f_rule != FNodeRule::min_sum))
    fail("--frozen-sibling on requires --pmu approx and --f-node min-sum");
  if (d.arith == ArithMode::fixed) {
    if (d.q_channel < 2 || d.q_channel > 28) fail("--q-channel must be in [2, 28]");
    if (d.q_pm < 1 || d.q_pm > 30) fail("--q-pm must be in [1, 30]");
    if (d.list.pmu == PmuRule::exact || d.list.f_rule == FNodeRule::exact)
      fail("exact PMU / f node need --arith float");
  }
  if (!(d.llr_scale > 0.0) || !std::isfinite(d.llr_scale)) fail("--llr-scale must be positive");

  if (snr_db.empty()) fail("--snr needs at least one point");
  for (double s : snr_db)
    if (std::isnan(s) || (std::isinf(s) && s < 0)) fail("--snr values must be finite or +inf");
  if (min_errors == 0) fail("--min-errors must be positive");
  if (max_frames == 0) fail("--max-frames must be positive");
  if (workers == 0) fail("--workers must be positive");

  const std::size_t M = hardware.pe_count;
  if (M == 0 || !std::has_single_bit(M) || M > N / 2) fail("--pe-count must be a power of two <= N/2");
  if (!(hardware.clock_mhz > 0.0)) fail("--clock-mhz must be positive");
}

Crc SimConfig::make_crc() const {
  if (crc_bits == 0) return {};
  return crc_poly ? Crc(crc_bits, *crc_poly) : Crc::standard(crc_bits);
}

PolarCode SimConfig::make_code() const {
  const std::size_t N = std::size_t{1} << n;
  auto frozen = frozen_file.empty() ? construct_frozen_set(n, k, design_snr_db) : load_frozen_set(frozen_file, N);
  return PolarCode(n, k, std::move(frozen), make_crc());
}

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }
std::string to_string(ErrorScope s) { return s == ErrorScope::source_word ? "source" : "payload"; }

}  // namespace polar
