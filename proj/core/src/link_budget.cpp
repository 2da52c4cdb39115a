// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the mmwv2i authors

#include "mmwv2i/link_budget.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mmwv2i/units.hpp"

namespace mmwv2i {

double noise_power_dbm(const NoiseModel& n) {
  if (n.bandwidth_hz <= 0.0) {
    throw std::invalid_argument("noise model requires bandwidth > 0");
  }
  return n.thermal_density_dbm_hz + 10.0 * std::log10(n.bandwidth_hz) +
         n.noise_figure_db;
}

double received_power_dbm(double tx_dbm, double bf_gain_db, double pathloss_db,
                          double shadow_db) {
  return tx_dbm + bf_gain_db - pathloss_db - shadow_db;
}

double sinr_db(double serving_rx_dbm, std::span<const double> interferer_rx_dbm,
               const NoiseModel& n) {
  const double signal_mw = dbm_to_mw(serving_rx_dbm);
  if (signal_mw == 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  double denom_mw = dbm_to_mw(noise_power_dbm(n));
  for (double rx : interferer_rx_dbm) {
    denom_mw += dbm_to_mw(rx);  // -inf dBm (outage) adds exactly zero
  }
  return linear_to_db(signal_mw / denom_mw);
}

}  // namespace mmwv2i
