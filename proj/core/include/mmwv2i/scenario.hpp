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

#include <array>
#include <cstdint>
#include <vector>

namespace mmwv2i {

/// Uniform planar array described by its element grid.
struct AntennaArray {
  int rows = 1;
  int cols = 1;
  double element_spacing_wavelengths = 0.5;

  int elements() const { return rows * cols; }
  void validate() const;  // throws std::invalid_argument
};

/// Simulation scenario in SI units: a single vehicle moving at constant
/// speed along a road where infrastructure nodes form a 1-D Poisson point
/// process of density rho.
struct ScenarioParams {
  double rho_per_m = 0.02;          // infrastructure node density
  double speed_mps = 25.0;          // vehicle speed V
  double slot_duration_s = 0.2;     // beam realignment period T_RTO
  double carrier_freq_hz = 28e9;    // f_c
  double bandwidth_hz = 1e9;        // W_tot
  double tx_power_dbm = 30.0;       // P_TX
  double noise_figure_db = 5.0;     // NF
  double sinr_threshold_db = -5.0;  // Gamma_0
  AntennaArray bs_array{8, 8};
  AntennaArray veh_array{4, 4};
  double road_length_m = 10000.0;

  void validate() const;  // throws std::invalid_argument naming the field
};

/// Scenario values as they appear in configuration files (mixed units).
struct RawScenarioConfig {
  double rho_per_km = 20.0;
  double speed_kmh = 90.0;
  double slot_s = 0.2;
  double fc_ghz = 28.0;
  double bw_ghz = 1.0;
  double ptx_dbm = 30.0;
  double nf_db = 5.0;
  double sinr_thresh_db = -5.0;
  std::array<int, 2> bs_array{8, 8};
  std::array<int, 2> veh_array{4, 4};
  double road_m = 10000.0;
  std::uint64_t seed = 1;
};

/// Converts configuration values to SI. Throws std::invalid_argument naming
/// the offending field when a value is out of range.
ScenarioParams convert_units(const RawScenarioConfig& raw);

/// Inverse of convert_units; round-trips to within 1e-12 relative error.
RawScenarioConfig to_raw(const ScenarioParams& params);

/// One sampled deployment: node positions plus the vehicle position.
struct Drop {
  std::vector<double> in_positions_m;  // sorted ascending
  double an_position_m = 0.0;
  std::uint64_t rng_seed = 0;
};

/// Samples infrastructure node positions with i.i.d. exponential gaps of
/// mean 1/rho and places the vehicle uniformly in the central third of the
/// segment (keeps it away from the truncated ends of the process).
/// Deterministic given the seed. Throws if road_length < 10/rho.
Drop sample_drop(const ScenarioParams& params, std::uint64_t seed);

}  // namespace mmwv2i
