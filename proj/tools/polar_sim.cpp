// polar_sim: Monte Carlo FER/BER sweeps for SC and CRC-aided list decoding
// of polar codes over the BI-AWGN channel, with the hardware latency model.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "polar/report.hpp"
#include "polar/sim_config.hpp"
#include "polar/simulation.hpp"

namespace {

template <typename E>
CLI::CheckedTransformer choice(const std::map<std::string, E>& m) {
  return CLI::CheckedTransformer(m, CLI::ignore_case);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace polar;
  SimConfig cfg;
  auto& d = cfg.decoder;

  CLI::App app{"Polar-code SC / SCL decoding simulator with sort and double-threshold list pruning"};
  app.set_config("--config", "", "Read options from an INI/TOML file using the long option names as keys");
  app.option_defaults()->always_capture_default();
  app.get_formatter()->column_width(34);

  std::string crc_poly;
  std::string frozen_sibling = "on";
  long rt_index = -1;

  app.add_option("--n", cfg.n, "Code exponent, N = 2^n")->envname("POLAR_SIM_N");
  app.add_option("--k", cfg.k, "Unfrozen bits K (CRC included)")->envname("POLAR_SIM_K");
  app.add_option("--crc-bits", cfg.crc_bits, "CRC length r (0 disables)")->envname("POLAR_SIM_CRC_BITS");
  app.add_option("--crc-poly", crc_poly, "CRC generator without the x^r term, e.g. 0x1021 (default per r)")
      ->envname("POLAR_SIM_CRC_POLY");
  auto* frozen_opt = app.add_option("--frozen-file", cfg.frozen_file, "Frozen-set file, one index per line")
                         ->envname("POLAR_SIM_FROZEN_FILE");
  app.add_option("--design-snr", cfg.design_snr_db, "Bhattacharyya construction Eb/N0 in dB")
      ->envname("POLAR_SIM_DESIGN_SNR")
      ->excludes(frozen_opt);

  app.add_option("--decoder", d.kind, "Decoder")
      ->transform(choice<DecoderKind>({{"sc", DecoderKind::sc}, {"scl", DecoderKind::scl}}))
      ->envname("POLAR_SIM_DECODER");
  app.add_option("--list-size", d.list.list_size, "List size L (power of two)")->envname("POLAR_SIM_LIST_SIZE");
  app.add_option("--pruner", d.list.pruner.kind, "List pruning strategy")
      ->transform(choice<PrunerKind>({{"sort", PrunerKind::sort}, {"dts", PrunerKind::dts}}))
      ->envname("POLAR_SIM_PRUNER");
  app.add_option("--rt-index", rt_index, "DTS rejection-threshold order statistic (default L-2)")
      ->envname("POLAR_SIM_RT_INDEX");
  app.add_option("--rule3", d.list.pruner.rule3, "DTS middle-band selection")
      ->transform(choice<Rule3Policy>({{"priority", Rule3Policy::priority}, {"random", Rule3Policy::random}}))
      ->envname("POLAR_SIM_RULE3");
  app.add_option("--pmu", d.list.pmu, "Path-metric update: approx (hardware) or exact")
      ->transform(choice<PmuRule>({{"approx", PmuRule::approx}, {"exact", PmuRule::exact}}))
      ->envname("POLAR_SIM_PMU");
  app.add_option("--f-node", d.list.f_rule, "f-node rule")
      ->transform(choice<FNodeRule>({{"min-sum", FNodeRule::min_sum}, {"exact", FNodeRule::exact}}))
      ->envname("POLAR_SIM_F_NODE");
  app.add_option("--arith", d.arith, "Arithmetic")
      ->transform(choice<ArithMode>({{"float", ArithMode::floating}, {"fixed", ArithMode::fixed}}))
      ->envname("POLAR_SIM_ARITH");
  app.add_option("--q-channel", d.q_channel, "Channel LLR bits (fixed mode)")->envname("POLAR_SIM_Q_CHANNEL");
  app.add_option("--q-pm", d.q_pm, "Path-metric bits (fixed mode)")->envname("POLAR_SIM_Q_PM");
  app.add_option("--llr-scale", d.llr_scale, "Quantizer LSBs per LLR unit")->envname("POLAR_SIM_LLR_SCALE");
  app.add_option("--frozen-sibling", frozen_sibling, "Frozen-sibling shortcut")
      ->check(CLI::IsMember({"on", "off"}))
      ->envname("POLAR_SIM_FROZEN_SIBLING");

  app.add_option("--snr", cfg.snr_db, "Eb/N0 points in dB, comma separated ('inf' = noiseless)")
      ->delimiter(',')
      ->envname("POLAR_SIM_SNR");
  app.add_option("--min-errors", cfg.min_errors, "Stop a point after this many frame errors")
      ->envname("POLAR_SIM_MIN_ERRORS");
  app.add_option("--max-frames", cfg.max_frames, "Frame cap per point")->envname("POLAR_SIM_MAX_FRAMES");
  app.add_option("--seed", cfg.seed, "Master seed")->envname("POLAR_SIM_SEED");
  app.add_option("--workers", cfg.workers, "Worker threads")->envname("POLAR_SIM_WORKERS");
  app.add_option("--error-scope", cfg.error_scope, "Frame-error comparison scope")
      ->transform(choice<ErrorScope>({{"source", ErrorScope::source_word}, {"payload", ErrorScope::payload}}))
      ->envname("POLAR_SIM_ERROR_SCOPE");

  app.add_option("--pe-count", cfg.hardware.pe_count, "Processing elements M per SC lane")
      ->envname("POLAR_SIM_PE_COUNT");
  app.add_option("--clock-mhz", cfg.hardware.clock_mhz, "Clock for throughput")->envname("POLAR_SIM_CLOCK_MHZ");

  app.add_option("--out", cfg.out, "Output path, '-' for stdout")->envname("POLAR_SIM_OUT");
  app.add_option("--format", cfg.format, "Output format")
      ->transform(choice<OutputFormat>({{"csv", OutputFormat::csv}, {"json", OutputFormat::json}}))
      ->envname("POLAR_SIM_FORMAT");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!crc_poly.empty()) cfg.crc_poly = std::stoull(crc_poly, nullptr, 0);
    d.list.pruner.rt_order_index = rt_index;
    d.list.frozen_sibling = frozen_sibling == "on";
    const auto results = run_sweep(cfg);
    emit(cfg, results);
  } catch (const std::exception& e) {
    std::cerr << "polar_sim: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
