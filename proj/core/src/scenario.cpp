// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the mmwv2i authors

#include "mmwv2i/scenario.hpp"

#include <random>
#include <stdexcept>
#include <string>

#include "mmwv2i/rng.hpp"
#include "mmwv2i/units.hpp"

namespace mmwv2i {

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) {
    throw std::invalid_argument("invalid scenario parameter '" + field + "': " + what);
  }
}

}  // namespace

void AntennaArray::validate() const {
  require(rows >= 1, "array.rows", "must be >= 1");
  require(cols >= 1, "array.cols", "must be >= 1");
  require(element_spacing_wavelengths > 0.0, "array.element_spacing_wavelengths",
          "must be > 0");
}

void ScenarioParams::validate() const {
  require(rho_per_m > 0.0, "rho_per_m", "must be > 0");
  require(speed_mps >= 0.0, "speed_mps", "must be >= 0");
  require(slot_duration_s > 0.0, "slot_duration_s", "must be > 0");
  require(carrier_freq_hz > 0.0, "carrier_freq_hz", "must be > 0");
  require(bandwidth_hz > 0.0, "bandwidth_hz", "must be > 0");
  require(road_length_m > 0.0, "road_length_m", "must be > 0");
  bs_array.validate();
  veh_array.validate();
}

ScenarioParams convert_units(const RawScenarioConfig& raw) {
  require(raw.rho_per_km > 0.0, "rho_per_km", "must be > 0");
  require(raw.speed_kmh >= 0.0, "speed_kmh", "must be >= 0");
  require(raw.slot_s > 0.0, "slot_s", "must be > 0");
  require(raw.fc_ghz > 0.0, "fc_ghz", "must be > 0");
  require(raw.bw_ghz > 0.0, "bw_ghz", "must be > 0");
  require(raw.road_m > 0.0, "road_m", "must be > 0");

  ScenarioParams p;
  p.rho_per_m = nodes_per_km_to_per_m(raw.rho_per_km);
  p.speed_mps = kmh_to_mps(raw.speed_kmh);
  p.slot_duration_s = raw.slot_s;
  p.carrier_freq_hz = ghz_to_hz(raw.fc_ghz);
  p.bandwidth_hz = ghz_to_hz(raw.bw_ghz);
  p.tx_power_dbm = raw.ptx_dbm;
  p.noise_figure_db = raw.nf_db;
  p.sinr_threshold_db = raw.sinr_thresh_db;
  p.bs_array = AntennaArray{raw.bs_array[0], raw.bs_array[1]};
  p.veh_array = AntennaArray{raw.veh_array[0], raw.veh_array[1]};
  p.road_length_m = raw.road_m;
  p.validate();
  return p;
}

RawScenarioConfig to_raw(const ScenarioParams& params) {
  RawScenarioConfig raw;
  raw.rho_per_km = nodes_per_m_to_per_km(params.rho_per_m);
  raw.speed_kmh = mps_to_kmh(params.speed_mps);
  raw.slot_s = params.slot_duration_s;
  raw.fc_ghz = hz_to_ghz(params.carrier_freq_hz);
  raw.bw_ghz = hz_to_ghz(params.bandwidth_hz);
  raw.ptx_dbm = params.tx_power_dbm;
  raw.nf_db = params.noise_figure_db;
  raw.sinr_thresh_db = params.sinr_threshold_db;
  raw.bs_array = {params.bs_array.rows, params.bs_array.cols};
  raw.veh_array = {params.veh_array.rows, params.veh_array.cols};
  raw.road_m = params.road_length_m;
  return raw;
}

Drop sample_drop(const ScenarioParams& params, std::uint64_t seed) {
  params.validate();
  if (params.road_length_m < 10.0 / params.rho_per_m) {
    throw std::invalid_argument(
        "road_length_m = " + std::to_string(params.road_length_m) +
        " is too short for density rho = " + std::to_string(params.rho_per_m) +
        " /m; need at least 10/rho = " +
        std::to_string(10.0 / params.rho_per_m) + " m");
  }

  auto rng = make_rng(seed, RngStream::kDrop);
  std::exponential_distribution<double> gap(params.rho_per_m);

  Drop drop;
  drop.rng_seed = seed;
  double x = gap(rng);
  while (x <= params.road_length_m) {
    drop.in_positions_m.push_back(x);
    x += gap(rng);
  }

  const double third = params.road_length_m / 3.0;
  std::uniform_real_distribution<double> place(third, 2.0 * third);
  drop.an_position_m = place(rng);
  return drop;
}

}  // namespace mmwv2i
