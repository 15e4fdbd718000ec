#pragma once

#include <stdexcept>
#include <string>

#include "core/scenario.hpp"

namespace craft {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario files are a single JSON document with four sections:
//   config   - every ScenarioConfig field, SI base units
//   sites    - [{id, kind, x, y}]
//   links    - [{a, b, bitrate_bps}]
//   tasks    - [{id, d_bits, freq_hz, cycles, x, y}]
// The config section additionally accepts "sigma2_dbm" on input and converts
// it to watts; save always writes "sigma2_w".

void save(const Scenario& scn, const std::string& path);  // throws IoError

// Parses and fully validates a scenario file; violations raise ParseError
// naming the offending field.
Scenario load(const std::string& path);

std::string scenario_to_json(const Scenario& scn);
Scenario scenario_from_json(const std::string& text);

std::string config_to_json(const ScenarioConfig& cfg);
ScenarioConfig config_from_json(const std::string& text);

}  // namespace craft
