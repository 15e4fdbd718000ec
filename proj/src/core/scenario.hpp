#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace craft {

// How a task's cycle demand converts to computation latency.
//   Literal: cycles / freq             (cycles is a total count)
//   PerBit:  cycles * d_bits / freq    (cycles is a per-bit demand)
enum class CompModel { Literal, PerBit };

const char* comp_model_name(CompModel m);
bool parse_comp_model(const std::string& name, CompModel& out);

struct ValueRange {
  double min = 0.0;
  double max = 0.0;

  friend bool operator==(const ValueRange&, const ValueRange&) = default;
};

// Everything needed to generate and evaluate a city scenario. Defaults give
// the standard simulation configuration; seed makes generation a pure
// function of this struct.
struct ScenarioConfig {
  int n_edge_candidates = 30;
  int n_fog_candidates = 5;
  int n_users = 100;
  double area_side_m = 1000.0;

  GeneBounds bounds;

  double alpha_hz = 0.5e9;  // per-server frequency, edge
  double omega_hz = 0.5e9;  // per-server frequency, fog

  ValueRange edge_edge_bitrate_bps{4.85e6, 6.85e6};
  ValueRange edge_fog_bitrate_bps{2.01e6, 4.01e6};

  double w_hz = 10e6;       // channel bandwidth
  double h_bar = 1e-5;      // average power gain
  double sigma2_w = 1e-13;  // noise power (-100 dBm)
  double p_w = 0.1;         // UE transmission power

  double c_fixed = 500.0;
  double c_dynamic = 100.0;

  ValueRange task_freq_hz{50e6, 200e6};
  ValueRange task_cycles{10.0, 60.0};
  ValueRange task_d_bits{800.0, 4e6};

  CompModel comp_model = CompModel::Literal;
  double extra_link_fraction = 0.3;
  std::uint64_t seed = 0;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// Returns one message per violated config rule; empty means valid.
std::vector<std::string> validate_config(const ScenarioConfig& cfg);

struct Scenario {
  ScenarioConfig config;
  NetworkGraph graph;
  std::vector<TaskSpec> tasks;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Deterministically builds a random city scenario: edge candidates, fog
// candidates and users uniform in the area square; edge-edge topology is a
// random spanning tree plus floor(extra_link_fraction * |M|) extra distinct
// links; each fog candidate connects to its 2 nearest edge candidates.
// Throws std::invalid_argument on an invalid config.
Scenario generate(const ScenarioConfig& cfg);

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

}  // namespace craft
