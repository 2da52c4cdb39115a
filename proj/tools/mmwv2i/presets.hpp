// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the mmwv2i authors

#pragma once

#include <string>
#include <vector>

#include "mmwv2i/coverage.hpp"
#include "mmwv2i/scenario.hpp"

namespace mmwv2i::tools {

// Figure-style parameter bundles. Densities are in nodes/km, speeds in km/h,
// slot durations in seconds; the commands convert to SI.
struct Preset {
  std::string name;
  std::vector<double> densities_per_km;
  std::vector<ArrayConfig> mimo_configs;  // swept in the MIMO variation
  AntennaArray focal_bs;                  // fixed config for V / T variations
  AntennaArray focal_veh;
  double speed_kmh = 90.0;
  double slot_s = 0.2;
  std::vector<double> speeds_kmh;  // V variation
  std::vector<double> slots_s;     // T_RTO variation
  double bar_density_per_km = 20.0;
};

/// The standard four array configurations: 4x4, 4x16, 64x4, 64x16
/// (base-station elements x vehicle elements).
std::vector<ArrayConfig> standard_mimo_configs();

/// Resolves a preset by name ("fig1", "fig3", "fig5", "fig6", "fig7",
/// "fig8" or "" for defaults). Throws std::invalid_argument for unknown
/// names.
Preset resolve_preset(const std::string& name,
                      const std::vector<double>& config_densities);

}  // namespace mmwv2i::tools
