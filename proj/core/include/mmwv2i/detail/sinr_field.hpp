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

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <span>

#include "mmwv2i/channel.hpp"
#include "mmwv2i/scenario.hpp"

// Internal Monte Carlo engine for post-beamforming SINR between the vehicle
// and a field of infrastructure nodes. Not part of the stable API.

namespace mmwv2i::detail {

/// u(az1, el1)^H u(az2, el2) for two steering vectors of the same planar
/// array, evaluated through the separable geometric-series closed form.
std::complex<double> steering_inner_product(const AntennaArray& array,
                                            double az1_rad, double el1_rad,
                                            double az2_rad, double el2_rad);

/// w^H u(az, el) for an arbitrary weight vector over the given array.
std::complex<double> steering_dot(const Eigen::VectorXcd& w,
                                  const AntennaArray& array, double az_rad,
                                  double el_rad);

/// |w_rx^H H w_tx|^2 at the slot-start instant (t = 0, carrier offset 0)
/// where w_tx is the steering vector of tx_array toward the interferer's own
/// intended direction. Avoids materializing H; matches
/// beamforming_gain(assemble_channel_matrix(...), ...) to rounding error.
double interference_gain(const ClusterSet& clusters, const AntennaArray& tx_array,
                         const AntennaArray& rx_array,
                         const Eigen::VectorXcd& w_rx, double tx_azimuth_rad,
                         double tx_elevation_rad);

/// One redraw of the serving link: channel state, pathloss with shadowing,
/// clusters, and the optimal receive beam.
struct ServingDraw {
  bool outage = true;
  double pathloss_db = 0.0;
  double bf_gain = 0.0;  // linear, best beam pair
  Eigen::VectorXcd w_rx;
};

class SinrField {
 public:
  SinrField(const ScenarioParams& scenario, const ChannelParams& channel);

  ServingDraw draw_serving(double distance_m, std::mt19937_64& rng) const;

  /// One Monte Carlo redraw of the post-beamforming SINR. The serving node
  /// sits at the given distance; every other node transmits at full power
  /// toward its own randomly drawn direction while the vehicle applies the
  /// serving receive beam. Returns linear SINR; 0 when the serving link is
  /// in outage.
  double redraw_sinr_linear(double serving_distance_m,
                            std::span<const double> interferer_distances_m,
                            std::mt19937_64& rng) const;

  /// Mean of redraw_sinr_linear over n_redraws independent redraws.
  double mean_sinr_linear(double serving_distance_m,
                          std::span<const double> interferer_distances_m,
                          int n_redraws, std::mt19937_64& rng) const;

  const ScenarioParams& scenario() const { return scenario_; }
  const ChannelParams& channel() const { return channel_; }
  double noise_mw() const { return noise_mw_; }

 private:
  double interference_mw(std::span<const double> distances_m,
                         const Eigen::VectorXcd& w_rx,
                         std::mt19937_64& rng) const;

  ScenarioParams scenario_;
  ChannelParams channel_;
  double noise_mw_ = 0.0;
};

}  // namespace mmwv2i::detail
