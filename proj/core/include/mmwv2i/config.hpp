// SPDX-License-Identifier: Apache-2.0
//
// mmwv2i - coverage and connectivity toolkit for mmWave V2I links
// Copyright (c) 2026 the mmwv2i authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmwv2i/channel.hpp"
#include "mmwv2i/scenario.hpp"

namespace mmwv2i {

/// Full simulation configuration as read from a JSON file.
///
/// Scenario keys (all required unless noted): rho_per_km, speed_kmh, slot_s,
/// fc_ghz, bw_ghz, ptx_dbm, nf_db, sinr_thresh_db, bs_array [rows, cols],
/// veh_array [rows, cols], road_m, seed. The optional "channel" section
/// overrides the measurement-campaign defaults: alpha_los_db, beta_los,
/// sigma_los_db, alpha_nlos_db, beta_nlos, sigma_nlos_db, lambda_clusters,
/// rms_angle_spread_deg, a_out, b_out, a_los. Optional sweep keys:
/// densities_per_km (list), r_comm_m (fixed coverage radius), trials,
/// rate_draws.
struct SimulationConfig {
  RawScenarioConfig raw;
  ScenarioParams scenario;
  ChannelParams channel;
  std::vector<double> densities_per_km;  // defaults to 10..100 step 10
  std::optional<double> r_comm_m;        // fixed radius instead of a coverage CSV
  int trials = 5000;
  int rate_draws = 1000;
};

/// Parses and validates a configuration file. Errors carry the offending
/// field name.
SimulationConfig load_config(const std::string& path);

/// Same, from a JSON string (used by tests).
SimulationConfig parse_config(const std::string& json_text);

/// Default configuration (Table-style parameters, 64x16 arrays).
SimulationConfig default_config();

}  // namespace mmwv2i
