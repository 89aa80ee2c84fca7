#include "polar/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace polar {

using nlohmann::json;

namespace {

json number(double v) {
  // JSON has no infinity; the noiseless point is written as a string.
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double read_number(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw std::invalid_argument("unexpected numeric string '" + s + "'");
  }
  return j.get<double>();
}

json cycles_to_json(const CycleReport& c) {
  return {{"closed_form_cycles", c.closed_form_cycles},
          {"simulated_cycles", c.simulated_cycles},
          {"fs_count", c.fs_count},
          {"throughput_mbps", c.throughput_mbps}};
}

}  // namespace

json config_to_json(const SimConfig& cfg) {
  const auto& d = cfg.decoder;
  json snr = json::array();
  for (double s : cfg.snr_db) snr.push_back(number(s));
  json j = {
      {"n", cfg.n},
      {"k", cfg.k},
      {"crc_bits", cfg.crc_bits},
      {"crc_poly", cfg.crc_bits ? json(cfg.make_crc().poly()) : json(nullptr)},
      {"frozen_file", cfg.frozen_file},
      {"design_snr_db", cfg.design_snr_db},
      {"decoder", to_string(d.kind)},
      {"list_size", d.list.list_size},
      {"pruner", to_string(d.list.pruner.kind)},
      {"rt_index", d.list.pruner.resolved_rt_index(d.list.list_size)},
      {"rule3", to_string(d.list.pruner.rule3)},
      {"pmu", to_string(d.list.pmu)},
      {"f_node", to_string(d.list.f_rule)},
      {"arith", to_string(d.arith)},
      {"q_channel", d.q_channel},
      {"q_pm", d.q_pm},
      {"llr_scale", d.llr_scale},
      {"frozen_sibling", d.list.frozen_sibling},
      {"snr", snr},
      {"min_errors", cfg.min_errors},
      {"max_frames", cfg.max_frames},
      {"seed", cfg.seed},
      {"workers", cfg.workers},
      {"error_scope", to_string(cfg.error_scope)},
      {"pe_count", cfg.hardware.pe_count},
      {"clock_mhz", cfg.hardware.clock_mhz},
  };
  return j;
}

json results_to_json(const SimConfig& cfg, const std::vector<FerResult>& results) {
  json points = json::array();
  for (const auto& r : results) {
    points.push_back({{"snr_db", number(r.snr_db)},
                      {"frames", r.frames},
                      {"frame_errors", r.frame_errors},
                      {"bit_errors", r.bit_errors},
                      {"fer", r.fer},
                      {"ber", r.ber},
                      {"fer_ci_lo", r.fer_ci_lo},
                      {"fer_ci_hi", r.fer_ci_hi},
                      {"rule3_fill_rate", r.rule3_fill_rate},
                      {"starve_rate", r.starve_rate},
                      {"crc_miss_rate", r.crc_miss_rate},
                      {"cycles", cycles_to_json(r.cycles)},
                      {"seed", r.seed}});
  }
  return {{"tool", "polar_sim"}, {"version", kToolVersion}, {"config", config_to_json(cfg)}, {"results", points}};
}

std::vector<FerResult> results_from_json(const json& doc) {
  std::vector<FerResult> out;
  for (const auto& p : doc.at("results")) {
    FerResult r;
    r.snr_db = read_number(p.at("snr_db"));
    r.frames = p.at("frames").get<std::uint64_t>();
    r.frame_errors = p.at("frame_errors").get<std::uint64_t>();
    r.bit_errors = p.at("bit_errors").get<std::uint64_t>();
    r.fer = p.at("fer").get<double>();
    r.ber = p.at("ber").get<double>();
    r.fer_ci_lo = p.at("fer_ci_lo").get<double>();
    r.fer_ci_hi = p.at("fer_ci_hi").get<double>();
    r.rule3_fill_rate = p.at("rule3_fill_rate").get<double>();
    r.starve_rate = p.at("starve_rate").get<double>();
    r.crc_miss_rate = p.at("crc_miss_rate").get<double>();
    const auto& c = p.at("cycles");
    r.cycles.closed_form_cycles = c.at("closed_form_cycles").get<std::int64_t>();
    r.cycles.simulated_cycles = c.at("simulated_cycles").get<std::int64_t>();
    r.cycles.fs_count = c.at("fs_count").get<std::size_t>();
    r.cycles.throughput_mbps = c.at("throughput_mbps").get<double>();
    r.seed = p.at("seed").get<std::uint64_t>();
    out.push_back(r);
  }
  return out;
}

void write_csv(std::ostream& os, const SimConfig& cfg, const std::vector<FerResult>& results) {
  os << "# polar_sim " << kToolVersion << "\n";
  os << "# config " << config_to_json(cfg).dump() << "\n";
  os << kCsvHeader << "\n";
  os << std::setprecision(10);
  for (const auto& r : results) {
    os << r.snr_db << ',' << r.frames << ',' << r.frame_errors << ',' << r.fer << ',' << r.fer_ci_lo << ','
       << r.fer_ci_hi << ',' << r.ber << ',' << r.rule3_fill_rate << ',' << r.starve_rate << ','
       << r.cycles.simulated_cycles << ',' << r.cycles.throughput_mbps << '\n';
  }
}

void emit(const SimConfig& cfg, const std::vector<FerResult>& results) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (cfg.out != "-") {
    file.open(cfg.out);
    if (!file) throw std::runtime_error("cannot open output file " + cfg.out);
    os = &file;
  }
  if (cfg.format == OutputFormat::csv) write_csv(*os, cfg, results);
  else *os << results_to_json(cfg, results).dump(2) << '\n';
  os->flush();
  if (!*os) throw std::runtime_error("failed writing results to " + cfg.out);
}

}  // namespace polar
