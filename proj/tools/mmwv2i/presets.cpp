// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the mmwv2i authors

#include "mmwv2i/presets.hpp"

#include <stdexcept>

namespace mmwv2i::tools {

std::vector<ArrayConfig> standard_mimo_configs() {
  return {
      {AntennaArray{2, 2}, AntennaArray{2, 2}},  // 4 x 4
      {AntennaArray{2, 2}, AntennaArray{4, 4}},  // 4 x 16
      {AntennaArray{8, 8}, AntennaArray{2, 2}},  // 64 x 4
      {AntennaArray{8, 8}, AntennaArray{4, 4}},  // 64 x 16
  };
}

Preset resolve_preset(const std::string& name,
                      const std::vector<double>& config_densities) {
  Preset p;
  p.name = name.empty() ? "default" : name;
  p.densities_per_km = config_densities;
  p.mimo_configs = standard_mimo_configs();
  p.focal_bs = AntennaArray{8, 8};
  p.focal_veh = AntennaArray{4, 4};
  p.speed_kmh = 90.0;
  p.slot_s = 0.2;
  p.speeds_kmh = {10.0, 20.0, 30.0, 100.0, 130.0};
  p.slots_s = {0.025, 0.1, 0.2, 0.5, 1.0};
  p.bar_density_per_km = 20.0;

  if (name.empty()) {
    // Default coverage grid: the two corner configurations.
    p.mimo_configs = {{AntennaArray{2, 2}, AntennaArray{2, 2}},
                      {AntennaArray{8, 8}, AntennaArray{4, 4}}};
    return p;
  }
  if (name == "fig1") {
    return p;  // full MIMO cross-product over the density sweep
  }
  if (name == "fig3" || name == "fig5" || name == "fig6") {
    return p;  // same sweep data; figures read different columns
  }
  if (name == "fig7" || name == "fig8") {
    p.densities_per_km.clear();
    for (int d = 5; d <= 100; d += 5) p.densities_per_km.push_back(d);
    return p;
  }
  throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace mmwv2i::tools
