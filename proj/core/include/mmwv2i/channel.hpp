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
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mmwv2i/scenario.hpp"

// Statistical 28 GHz channel measured in dense urban deployments: a link is
// in LoS, NLoS or outage depending on distance; pathloss follows a log-
// distance law with lognormal shadowing; small-scale structure is a random
// set of scattering clusters, each carrying a handful of subpaths with their
// own angles, delays and power fractions.

namespace mmwv2i {

enum class LinkState { kLos, kNlos, kOutage };

/// Distance-decay parameters of the three-state link model.
/// Defaults fitted to the 28 GHz measurement campaign.
struct StateProbabilityParams {
  double a_out_per_m = 0.0334;
  double b_out = 5.2;
  double a_los_per_m = 0.0149;
};

struct StateProbabilities {
  double outage = 0.0;
  double los = 0.0;
  double nlos = 0.0;
};

/// Log-distance pathloss triple for one link state:
/// PL(d) = alpha + 10 * beta * log10(d) + N(0, sigma^2).
struct PathlossParams {
  double alpha_db = 0.0;
  double beta = 0.0;
  double shadow_sigma_db = 0.0;
};

/// Cluster/subpath statistics. Values not printed in the underlying
/// measurement report are adopted defaults and fully config-overridable.
struct ClusterStatistics {
  double lambda_clusters = 1.8;     // K ~ max(Poisson(lambda), 1)
  int max_subpaths = 10;            // L_k ~ U{1..max_subpaths}
  double rms_angle_spread_rad = 0.17453292519943295;   // 10 deg
  double elevation_sector_rad = 0.7853981633974483;    // +-45 deg
  double cluster_power_decay = 1.0;     // e-folding across cluster index
  double cluster_power_sigma_db = 3.0;  // per-cluster lognormal fluctuation
  double delay_spread_s = 200e-9;
};

/// Full parameter set of the statistical channel.
struct ChannelParams {
  StateProbabilityParams state;
  PathlossParams los{61.4, 2.0, 5.8};
  PathlossParams nlos{72.0, 2.92, 8.7};
  ClusterStatistics clusters;
  bool shadowing_enabled = true;

  /// Pathloss triple for a non-outage state; throws on kOutage.
  const PathlossParams& pathloss_for(LinkState state) const;
};

/// One ray inside a cluster. The arrival azimuth doubles as the angle
/// omega_kl between the ray and the vehicle's direction of motion, since
/// the vehicle moves along the road axis.
struct Subpath {
  double power_fraction = 0.0;  // P_lk, sums to 1 over the whole set
  double delay_s = 0.0;
  double aoa_azimuth_rad = 0.0;
  double aoa_elevation_rad = 0.0;
  double aod_azimuth_rad = 0.0;
  double aod_elevation_rad = 0.0;
};

struct Cluster {
  double central_aoa_azimuth_rad = 0.0;
  double central_aoa_elevation_rad = 0.0;
  double central_aod_azimuth_rad = 0.0;
  double central_aod_elevation_rad = 0.0;
  std::vector<Subpath> subpaths;
};

struct ClusterSet {
  std::vector<Cluster> clusters;

  int total_subpaths() const;
  double power_sum() const;
};

/// Sampled large-scale state of one link, ready for time-frequency
/// evaluation. pathloss_db includes the shadowing draw; an outage link has
/// infinite pathloss and an empty cluster set.
struct ChannelInstance {
  LinkState state = LinkState::kOutage;
  double pathloss_db = 0.0;
  ClusterSet clusters;
  double doppler_hz = 0.0;  // f_d = f_c * v / c
};

/// Probabilities of (outage, LoS, NLoS) at distance d:
///   P_out  = max(0, 1 - exp(-a_out d + b_out))
///   P_LoS  = (1 - P_out) exp(-a_LoS d)
///   P_NLoS = 1 - P_out - P_LoS
/// The three sum to 1 exactly for every d >= 0.
StateProbabilities link_state_probabilities(double distance_m,
                                            const StateProbabilityParams& p);

LinkState sample_link_state(double distance_m, const StateProbabilityParams& p,
                            std::mt19937_64& rng);
LinkState sample_link_state(double distance_m, const StateProbabilityParams& p,
                            std::uint64_t seed);

/// Log-distance pathloss in dB with an optional externally drawn shadowing
/// sample. Throws for the outage state and for d <= 0.
double pathloss_db(double distance_m, LinkState state, const ChannelParams& p,
                   std::optional<double> shadow_db = std::nullopt);

/// Draws the cluster set: K = max(Poisson(lambda), 1) clusters, L_k uniform
/// subpaths each; central arrival/departure azimuths uniform over the circle,
/// elevations uniform in the configured sector; subpath angles wrapped
/// Gaussian around the cluster centers; power fractions decay exponentially
/// across clusters with lognormal fluctuation, split uniformly across
/// subpaths and renormalized to sum 1.
ClusterSet sample_clusters(const ClusterStatistics& p, std::mt19937_64& rng);
ClusterSet sample_clusters(const ClusterStatistics& p, std::uint64_t seed);

/// Draws the complete large-scale state of a link at distance d.
ChannelInstance sample_channel(double distance_m, const ChannelParams& p,
                               double carrier_freq_hz, double speed_mps,
                               std::mt19937_64& rng);

/// Small-scale fading coefficient of one subpath:
///   g_kl(t, f) = sqrt(P_lk) * exp(i (2 pi f_d cos(omega_kl) t - 2 pi tau_kl f))
/// Its modulus is sqrt(P_lk) independent of t and f.
std::complex<double> small_scale_fading(const ChannelInstance& ch, int cluster,
                                        int subpath, double t_s, double freq_hz);

/// Unit-norm spatial signature of a uniform planar array. Element (m, n)
/// carries phase 2 pi s (m sin(el) + n cos(el) sin(az)) with s the element
/// spacing in wavelengths; entries have magnitude 1/sqrt(elements). Index
/// order is row-major: entry m * cols + n.
Eigen::VectorXcd spatial_signature(const AntennaArray& array, double azimuth_rad,
                                   double elevation_rad);

/// Narrowband channel matrix at (t, f), shape (rx elements x tx elements):
///   H = 1/sqrt(L) sum_k sum_l g_kl u_rx u_tx^*
/// with L the total number of subpaths. Throws for outage links.
Eigen::MatrixXcd assemble_channel_matrix(const ChannelInstance& ch,
                                         const AntennaArray& tx_array,
                                         const AntennaArray& rx_array,
                                         double t_s, double freq_hz);

/// Transmit/receive beamforming pair, each of unit Euclidean norm.
struct BeamformingVectors {
  Eigen::VectorXcd w_tx;
  Eigen::VectorXcd w_rx;
};

/// Beamforming gain |w_rx^* H w_tx|^2. Throws on dimension mismatch.
double beamforming_gain(const Eigen::MatrixXcd& channel,
                        const BeamformingVectors& w);

/// Optimal beam pair under perfect alignment: the dominant left/right
/// singular vectors of the channel matrix. Throws for a zero matrix.
BeamformingVectors best_beam_pair(const Eigen::MatrixXcd& channel);

}  // namespace mmwv2i
