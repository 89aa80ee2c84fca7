#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "polar/sim_config.hpp"
#include "polar/simulation.hpp"

namespace polar {

// CSV column order; one data row per SNR point.
inline constexpr const char* kCsvHeader =
    "snr_db,frames,frame_errors,fer,fer_ci_lo,fer_ci_hi,ber,rule3_fill_rate,starve_rate,cycles,throughput_mbps";

// Leading '#' lines echo the tool version and configuration.
void write_csv(std::ostream& os, const SimConfig& cfg, const std::vector<FerResult>& results);

nlohmann::json config_to_json(const SimConfig& cfg);
nlohmann::json results_to_json(const SimConfig& cfg, const std::vector<FerResult>& results);
std::vector<FerResult> results_from_json(const nlohmann::json& doc);

// Writes to cfg.out ("-" is stdout) in cfg.format.
void emit(const SimConfig& cfg, const std::vector<FerResult>& results);

}  // namespace polar
