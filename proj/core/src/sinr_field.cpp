// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the mmwv2i authors

#include "mmwv2i/detail/sinr_field.hpp"

#include <cmath>

#include "mmwv2i/link_budget.hpp"
#include "mmwv2i/units.hpp"

namespace mmwv2i::detail {

namespace {

// Geometric phase sum D_N(x) = sum_{m=0}^{N-1} e^{i m x}.
std::complex<double> phase_sum(int n, double x) {
  const double half = 0.5 * x;
  const double denom = std::sin(half);
  if (std::abs(denom) < 1e-12) {
    return {static_cast<double>(n), 0.0};
  }
  const double mag = std::sin(n * half) / denom;
  return std::polar(mag, half * (n - 1));
}

struct SteeringPhases {
  double row_step;  // a = 2 pi s sin(el)
  double col_step;  // b = 2 pi s cos(el) sin(az)
};

SteeringPhases phases(const AntennaArray& array, double az, double el) {
  const double f = 2.0 * kPi * array.element_spacing_wavelengths;
  return {f * std::sin(el), f * std::cos(el) * std::sin(az)};
}

}  // namespace

std::complex<double> steering_inner_product(const AntennaArray& array,
                                            double az1_rad, double el1_rad,
                                            double az2_rad, double el2_rad) {
  const SteeringPhases p1 = phases(array, az1_rad, el1_rad);
  const SteeringPhases p2 = phases(array, az2_rad, el2_rad);
  const std::complex<double> rows =
      phase_sum(array.rows, p2.row_step - p1.row_step);
  const std::complex<double> cols =
      phase_sum(array.cols, p2.col_step - p1.col_step);
  return rows * cols / static_cast<double>(array.elements());
}

std::complex<double> steering_dot(const Eigen::VectorXcd& w,
                                  const AntennaArray& array, double az_rad,
                                  double el_rad) {
  const SteeringPhases p = phases(array, az_rad, el_rad);
  const std::complex<double> ea = std::polar(1.0, p.row_step);
  const std::complex<double> eb = std::polar(1.0, p.col_step);
  const double scale = 1.0 / std::sqrt(static_cast<double>(array.elements()));

  std::complex<double> acc{0.0, 0.0};
  std::complex<double> row_phase{1.0, 0.0};
  const int cols = array.cols;
  for (int m = 0; m < array.rows; ++m) {
    std::complex<double> col_acc{0.0, 0.0};
    std::complex<double> e{1.0, 0.0};
    for (int n = 0; n < cols; ++n) {
      col_acc += std::conj(w(m * cols + n)) * e;
      e *= eb;
    }
    acc += row_phase * col_acc;
    row_phase *= ea;
  }
  return acc * scale;
}

double interference_gain(const ClusterSet& clusters, const AntennaArray& tx_array,
                         const AntennaArray& rx_array,
                         const Eigen::VectorXcd& w_rx, double tx_azimuth_rad,
                         double tx_elevation_rad) {
  const int total = clusters.total_subpaths();
  if (total == 0) return 0.0;
  const double norm = 1.0 / std::sqrt(static_cast<double>(total));

  std::complex<double> amp{0.0, 0.0};
  for (const Cluster& c : clusters.clusters) {
    for (const Subpath& sp : c.subpaths) {
      // At t = 0 and carrier offset 0 the subpath coefficient is sqrt(P_lk).
      const double g = std::sqrt(sp.power_fraction);
      const std::complex<double> rx =
          steering_dot(w_rx, rx_array, sp.aoa_azimuth_rad, sp.aoa_elevation_rad);
      const std::complex<double> tx = steering_inner_product(
          tx_array, sp.aod_azimuth_rad, sp.aod_elevation_rad, tx_azimuth_rad,
          tx_elevation_rad);
      amp += g * rx * tx;
    }
  }
  return std::norm(amp * norm);
}

SinrField::SinrField(const ScenarioParams& scenario, const ChannelParams& channel)
    : scenario_(scenario), channel_(channel) {
  scenario_.validate();
  noise_mw_ = dbm_to_mw(noise_power_dbm(
      NoiseModel{scenario_.bandwidth_hz, scenario_.noise_figure_db}));
}

ServingDraw SinrField::draw_serving(double distance_m,
                                    std::mt19937_64& rng) const {
  ServingDraw draw;
  const ChannelInstance ch =
      sample_channel(distance_m, channel_, scenario_.carrier_freq_hz,
                     scenario_.speed_mps, rng);
  if (ch.state == LinkState::kOutage) {
    return draw;
  }
  const Eigen::MatrixXcd h =
      assemble_channel_matrix(ch, scenario_.bs_array, scenario_.veh_array,
                              /*t_s=*/0.0, /*freq_hz=*/0.0);
  const BeamformingVectors w = best_beam_pair(h);
  draw.outage = false;
  draw.pathloss_db = ch.pathloss_db;
  draw.bf_gain = beamforming_gain(h, w);
  draw.w_rx = w.w_rx;
  return draw;
}

double SinrField::interference_mw(std::span<const double> distances_m,
                                  const Eigen::VectorXcd& w_rx,
                                  std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_real_distribution<double> azimuth(-kPi, kPi);
  std::uniform_real_distribution<double> elevation(
      -channel_.clusters.elevation_sector_rad,
      channel_.clusters.elevation_sector_rad);

  double sum_mw = 0.0;
  for (double d : distances_m) {
    const StateProbabilities probs =
        link_state_probabilities(d, channel_.state);
    const double x = u01(rng);
    if (x < probs.outage) continue;  // outage links carry exactly zero power
    const LinkState state =
        x < probs.outage + probs.nlos ? LinkState::kNlos : LinkState::kLos;

    double shadow = 0.0;
    if (channel_.shadowing_enabled) {
      std::normal_distribution<double> xi(
          0.0, channel_.pathloss_for(state).shadow_sigma_db);
      shadow = xi(rng);
    }
    const double pl = pathloss_db(d, state, channel_, shadow);
    const ClusterSet clusters = sample_clusters(channel_.clusters, rng);
    const double gain =
        interference_gain(clusters, scenario_.bs_array, scenario_.veh_array,
                          w_rx, azimuth(rng), elevation(rng));
    if (gain > 0.0) {
      sum_mw += dbm_to_mw(scenario_.tx_power_dbm - pl + linear_to_db(gain));
    }
  }
  return sum_mw;
}

double SinrField::redraw_sinr_linear(double serving_distance_m,
                                     std::span<const double> interferer_distances_m,
                                     std::mt19937_64& rng) const {
  const ServingDraw serving = draw_serving(serving_distance_m, rng);
  if (serving.outage) {
    return 0.0;
  }
  const double signal_mw =
      dbm_to_mw(scenario_.tx_power_dbm - serving.pathloss_db +
                linear_to_db(serving.bf_gain));
  const double interf_mw =
      interference_mw(interferer_distances_m, serving.w_rx, rng);
  return signal_mw / (interf_mw + noise_mw_);
}

double SinrField::mean_sinr_linear(double serving_distance_m,
                                   std::span<const double> interferer_distances_m,
                                   int n_redraws, std::mt19937_64& rng) const {
  double acc = 0.0;
  for (int i = 0; i < n_redraws; ++i) {
    acc += redraw_sinr_linear(serving_distance_m, interferer_distances_m, rng);
  }
  return acc / static_cast<double>(n_redraws);
}

}  // namespace mmwv2i::detail
