// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the mmwv2i authors

#include "mmwv2i/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mmwv2i/rng.hpp"
#include "mmwv2i/units.hpp"

namespace mmwv2i {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

double clamp_elevation(double rad) {
  return std::clamp(rad, -kPi / 2.0, kPi / 2.0);
}

}  // namespace

const PathlossParams& ChannelParams::pathloss_for(LinkState state) const {
  switch (state) {
    case LinkState::kLos:
      return los;
    case LinkState::kNlos:
      return nlos;
    default:
      throw std::invalid_argument("outage links have no pathloss parameters");
  }
}

int ClusterSet::total_subpaths() const {
  int n = 0;
  for (const auto& c : clusters) n += static_cast<int>(c.subpaths.size());
  return n;
}

double ClusterSet::power_sum() const {
  double s = 0.0;
  for (const auto& c : clusters)
    for (const auto& p : c.subpaths) s += p.power_fraction;
  return s;
}

StateProbabilities link_state_probabilities(double distance_m,
                                            const StateProbabilityParams& p) {
  if (distance_m < 0.0) {
    throw std::invalid_argument("distance must be >= 0");
  }
  StateProbabilities s;
  s.outage =
      std::max(0.0, 1.0 - std::exp(-p.a_out_per_m * distance_m + p.b_out));
  s.los = (1.0 - s.outage) * std::exp(-p.a_los_per_m * distance_m);
  s.nlos = 1.0 - s.outage - s.los;
  return s;
}

LinkState sample_link_state(double distance_m, const StateProbabilityParams& p,
                            std::mt19937_64& rng) {
  const StateProbabilities s = link_state_probabilities(distance_m, p);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double x = u(rng);
  if (x < s.outage) return LinkState::kOutage;
  if (x < s.outage + s.nlos) return LinkState::kNlos;
  return LinkState::kLos;
}

LinkState sample_link_state(double distance_m, const StateProbabilityParams& p,
                            std::uint64_t seed) {
  auto rng = make_rng(seed, RngStream::kLinkState);
  return sample_link_state(distance_m, p, rng);
}

double pathloss_db(double distance_m, LinkState state, const ChannelParams& p,
                   std::optional<double> shadow_db) {
  if (state == LinkState::kOutage) {
    throw std::invalid_argument("pathloss is undefined in the outage state");
  }
  if (distance_m <= 0.0) {
    throw std::invalid_argument("pathloss requires distance > 0");
  }
  const PathlossParams& pl = p.pathloss_for(state);
  return pl.alpha_db + 10.0 * pl.beta * std::log10(distance_m) +
         shadow_db.value_or(0.0);
}

ClusterSet sample_clusters(const ClusterStatistics& p, std::mt19937_64& rng) {
  if (p.lambda_clusters <= 0.0) {
    throw std::invalid_argument("lambda_clusters must be > 0");
  }
  if (p.max_subpaths < 1) {
    throw std::invalid_argument("max_subpaths must be >= 1");
  }

  std::poisson_distribution<int> n_clusters(p.lambda_clusters);
  std::uniform_int_distribution<int> n_subpaths(1, p.max_subpaths);
  std::uniform_real_distribution<double> azimuth(-kPi, kPi);
  std::uniform_real_distribution<double> elevation(-p.elevation_sector_rad,
                                                   p.elevation_sector_rad);
  std::normal_distribution<double> offset(0.0, p.rms_angle_spread_rad);
  std::normal_distribution<double> power_fluct_db(0.0, p.cluster_power_sigma_db);
  std::exponential_distribution<double> cluster_delay(1.0 / p.delay_spread_s);
  std::exponential_distribution<double> subpath_delay(10.0 / p.delay_spread_s);

  const int k = std::max(n_clusters(rng), 1);

  ClusterSet set;
  set.clusters.resize(k);
  std::vector<double> weights(k);
  for (int ci = 0; ci < k; ++ci) {
    Cluster& c = set.clusters[ci];
    c.central_aoa_azimuth_rad = azimuth(rng);
    c.central_aoa_elevation_rad = elevation(rng);
    c.central_aod_azimuth_rad = azimuth(rng);
    c.central_aod_elevation_rad = elevation(rng);
    weights[ci] = std::exp(-ci / p.cluster_power_decay) *
                  db_to_linear(power_fluct_db(rng));

    const int l = n_subpaths(rng);
    const double base_delay = cluster_delay(rng);
    c.subpaths.resize(l);
    for (Subpath& sp : c.subpaths) {
      sp.aoa_azimuth_rad = wrap_angle(c.central_aoa_azimuth_rad + offset(rng));
      sp.aoa_elevation_rad =
          clamp_elevation(c.central_aoa_elevation_rad + offset(rng));
      sp.aod_azimuth_rad = wrap_angle(c.central_aod_azimuth_rad + offset(rng));
      sp.aod_elevation_rad =
          clamp_elevation(c.central_aod_elevation_rad + offset(rng));
      sp.delay_s = base_delay + subpath_delay(rng);
    }
  }

  // Exponential decay across clusters, uniform split across subpaths,
  // renormalized so the fractions sum to exactly 1.
  double total = 0.0;
  for (int ci = 0; ci < k; ++ci) total += weights[ci];
  for (int ci = 0; ci < k; ++ci) {
    Cluster& c = set.clusters[ci];
    const double per_subpath =
        weights[ci] / (total * static_cast<double>(c.subpaths.size()));
    for (Subpath& sp : c.subpaths) sp.power_fraction = per_subpath;
  }
  return set;
}

ClusterSet sample_clusters(const ClusterStatistics& p, std::uint64_t seed) {
  auto rng = make_rng(seed, RngStream::kClusters);
  return sample_clusters(p, rng);
}

ChannelInstance sample_channel(double distance_m, const ChannelParams& p,
                               double carrier_freq_hz, double speed_mps,
                               std::mt19937_64& rng) {
  ChannelInstance ch;
  ch.doppler_hz = carrier_freq_hz * speed_mps / kSpeedOfLightMps;
  ch.state = sample_link_state(distance_m, p.state, rng);
  if (ch.state == LinkState::kOutage) {
    ch.pathloss_db = std::numeric_limits<double>::infinity();
    return ch;
  }
  double shadow = 0.0;
  if (p.shadowing_enabled) {
    std::normal_distribution<double> xi(0.0,
                                        p.pathloss_for(ch.state).shadow_sigma_db);
    shadow = xi(rng);
  }
  ch.pathloss_db = pathloss_db(distance_m, ch.state, p, shadow);
  ch.clusters = sample_clusters(p.clusters, rng);
  return ch;
}

std::complex<double> small_scale_fading(const ChannelInstance& ch, int cluster,
                                        int subpath, double t_s,
                                        double freq_hz) {
  const auto& c = ch.clusters.clusters.at(cluster);
  const auto& sp = c.subpaths.at(subpath);
  const double phase =
      2.0 * kPi * ch.doppler_hz * std::cos(sp.aoa_azimuth_rad) * t_s -
      2.0 * kPi * sp.delay_s * freq_hz;
  return std::polar(std::sqrt(sp.power_fraction), phase);
}

Eigen::VectorXcd spatial_signature(const AntennaArray& array, double azimuth_rad,
                                   double elevation_rad) {
  array.validate();
  const int rows = array.rows;
  const int cols = array.cols;
  const double s = array.element_spacing_wavelengths;

  // Separable phase progression: row step a, column step b.
  const double a = 2.0 * kPi * s * std::sin(elevation_rad);
  const double b = 2.0 * kPi * s * std::cos(elevation_rad) * std::sin(azimuth_rad);

  const std::complex<double> ea = std::polar(1.0, a);
  const std::complex<double> eb = std::polar(1.0, b);

  Eigen::VectorXcd v(rows * cols);
  const double scale = 1.0 / std::sqrt(static_cast<double>(rows * cols));
  std::complex<double> row_phase{scale, 0.0};
  for (int m = 0; m < rows; ++m) {
    std::complex<double> e = row_phase;
    for (int n = 0; n < cols; ++n) {
      v(m * cols + n) = e;
      e *= eb;
    }
    row_phase *= ea;
  }
  return v;
}

Eigen::MatrixXcd assemble_channel_matrix(const ChannelInstance& ch,
                                         const AntennaArray& tx_array,
                                         const AntennaArray& rx_array,
                                         double t_s, double freq_hz) {
  if (ch.state == LinkState::kOutage) {
    throw std::invalid_argument("cannot assemble a channel matrix in outage");
  }
  const int total = ch.clusters.total_subpaths();
  if (total == 0) {
    throw std::invalid_argument("channel instance has no subpaths");
  }
  const double norm = 1.0 / std::sqrt(static_cast<double>(total));

  Eigen::MatrixXcd h =
      Eigen::MatrixXcd::Zero(rx_array.elements(), tx_array.elements());
  for (int ci = 0; ci < static_cast<int>(ch.clusters.clusters.size()); ++ci) {
    const Cluster& c = ch.clusters.clusters[ci];
    for (int li = 0; li < static_cast<int>(c.subpaths.size()); ++li) {
      const Subpath& sp = c.subpaths[li];
      const std::complex<double> g =
          norm * small_scale_fading(ch, ci, li, t_s, freq_hz);
      const Eigen::VectorXcd u_rx =
          spatial_signature(rx_array, sp.aoa_azimuth_rad, sp.aoa_elevation_rad);
      const Eigen::VectorXcd u_tx =
          spatial_signature(tx_array, sp.aod_azimuth_rad, sp.aod_elevation_rad);
      h.noalias() += g * (u_rx * u_tx.adjoint());
    }
  }
  return h;
}

double beamforming_gain(const Eigen::MatrixXcd& channel,
                        const BeamformingVectors& w) {
  if (w.w_rx.size() != channel.rows() || w.w_tx.size() != channel.cols()) {
    throw std::invalid_argument(
        "beamforming vector dimensions do not match the channel matrix");
  }
  const std::complex<double> amp = w.w_rx.dot(channel * w.w_tx);
  return std::norm(amp);
}

BeamformingVectors best_beam_pair(const Eigen::MatrixXcd& channel) {
  const double fnorm = channel.norm();
  if (!(fnorm > 0.0) || !std::isfinite(fnorm)) {
    throw std::invalid_argument("best_beam_pair requires a nonzero channel");
  }

  // Dominant singular pair via the Gram matrix of the smaller side.
  BeamformingVectors w;
  if (channel.rows() <= channel.cols()) {
    const Eigen::MatrixXcd gram = channel * channel.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
    w.w_rx = eig.eigenvectors().col(channel.rows() - 1);
    w.w_tx = channel.adjoint() * w.w_rx;
    w.w_tx.normalize();
  } else {
    const Eigen::MatrixXcd gram = channel.adjoint() * channel;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
    w.w_tx = eig.eigenvectors().col(channel.cols() - 1);
    w.w_rx = channel * w.w_tx;
    w.w_rx.normalize();
  }
  return w;
}

}  // namespace mmwv2i
