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

#include <span>

namespace mmwv2i {

/// Thermal noise model: noise power dBm = density + 10 log10(W) + NF.
struct NoiseModel {
  double bandwidth_hz = 1e9;
  double noise_figure_db = 5.0;
  double thermal_density_dbm_hz = -174.0;
};

double noise_power_dbm(const NoiseModel& n);

/// Link budget in the dB domain: P_RX = P_TX + G_BF - PL - xi.
double received_power_dbm(double tx_dbm, double bf_gain_db, double pathloss_db,
                          double shadow_db);

/// SINR in dB of a serving link against a set of interferers over thermal
/// noise. Received powers are in dBm; a link in outage carries -infinity
/// dBm (exactly zero linear power). A serving link in outage yields the
/// -infinity dB sentinel.
double sinr_db(double serving_rx_dbm, std::span<const double> interferer_rx_dbm,
               const NoiseModel& n);

/// Budget breakdown of one vehicle-to-node link inside a drop.
struct LinkBudgetResult {
  double rx_power_dbm = 0.0;
  double pathloss_db = 0.0;
  double bf_gain_db = 0.0;
  double sinr_db = 0.0;
  int serving_index = -1;
  double interference_dbm = 0.0;  // aggregate over interferers
};

}  // namespace mmwv2i
