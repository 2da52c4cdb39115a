// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the mmwv2i authors

#include "mmwv2i/connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mmwv2i/detail/parallel.hpp"
#include "mmwv2i/detail/sinr_field.hpp"
#include "mmwv2i/rng.hpp"
#include "mmwv2i/units.hpp"

namespace mmwv2i {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) {
    throw std::invalid_argument(std::string(name) + " must be > 0");
  }
}

/// Mean of an Exp(rho) variable truncated to [0, cutoff]. Uses the series
/// expansion near rho*cutoff -> 0 where the closed form cancels badly.
double truncated_exponential_mean(double rho, double cutoff) {
  const double x = rho * cutoff;
  if (x < 1e-4) {
    return cutoff * (0.5 - x / 12.0 + x * x * x / 720.0);
  }
  return 1.0 / rho - cutoff / std::expm1(x);
}

}  // namespace

double p_start(double rho_per_m, double r_comm_m) {
  require_positive(rho_per_m, "rho");
  require_positive(r_comm_m, "r_comm");
  return -std::expm1(-2.0 * rho_per_m * r_comm_m);
}

double p_no_leave(double rho_per_m, double r_comm_m, double speed_mps,
                  double t_rto_s) {
  require_positive(rho_per_m, "rho");
  require_positive(r_comm_m, "r_comm");
  require_positive(t_rto_s, "t_rto");
  if (speed_mps < 0.0) {
    throw std::invalid_argument("speed must be >= 0");
  }
  const double travel = speed_mps * t_rto_s;
  if (travel >= r_comm_m) {
    return 0.0;  // outside the T_RTO*V << R_comm regime the form goes negative
  }
  const double num = std::exp(-rho_per_m * travel) - std::exp(-rho_per_m * r_comm_m);
  const double den = -std::expm1(-rho_per_m * r_comm_m);
  return num / den;
}

double p_nl(double p_start, double p_no_leave) {
  if (p_start < 0.0 || p_start > 1.0 || p_no_leave < 0.0 || p_no_leave > 1.0) {
    throw std::invalid_argument("p_nl requires probabilities in [0, 1]");
  }
  return p_start * p_no_leave;
}

double e_tl(double rho_per_m, double r_comm_m, double speed_mps, double t_rto_s,
            AlignedTimeForm form) {
  require_positive(rho_per_m, "rho");
  require_positive(r_comm_m, "r_comm");
  require_positive(t_rto_s, "t_rto");
  if (!(speed_mps > 0.0)) {
    throw std::invalid_argument(
        "e_tl is undefined for a stationary vehicle; branch on p_no_leave == 1");
  }
  const double cutoff = std::min(speed_mps * t_rto_s, r_comm_m);
  double value = truncated_exponential_mean(rho_per_m, cutoff) / speed_mps;
  if (form == AlignedTimeForm::kPaperDisplayed) {
    value *= -std::expm1(-rho_per_m * r_comm_m);
  }
  return value;
}

double e_tcomm(double p_start, double p_no_leave, double e_tl_s,
               double t_rto_s) {
  return p_start * (p_no_leave * t_rto_s + (1.0 - p_no_leave) * e_tl_s);
}

double spectral_efficiency(double sinr_linear, double cap_bps_hz) {
  if (sinr_linear < 0.0) {
    throw std::invalid_argument("sinr must be >= 0 in linear scale");
  }
  return std::min(std::log2(1.0 + sinr_linear), cap_bps_hz);
}

double mean_rate_bps(const ScenarioParams& params, const ChannelParams& channel,
                     double r_comm_m, int n_draws, std::uint64_t seed,
                     double cap_bps_hz, int jobs) {
  require_positive(params.rho_per_m, "rho");
  require_positive(r_comm_m, "r_comm");
  if (n_draws < 1) {
    throw std::invalid_argument("mean_rate requires n_draws >= 1");
  }

  const detail::SinrField field(params, channel);
  const double serving_distance =
      std::min(1.0 / params.rho_per_m, r_comm_m);
  const double cutoff = 450.0;

  std::vector<double> rates(n_draws);
  detail::parallel_for_index(n_draws, jobs, [&](std::int64_t i) {
    auto rng = make_rng(seed, RngStream::kRate, static_cast<std::uint64_t>(i));
    const Drop drop = sample_drop(params, rng());
    const double veh = drop.an_position_m;

    std::vector<double> interferers;
    for (double pos : drop.in_positions_m) {
      const double d = std::abs(pos - veh);
      if (d <= cutoff) interferers.push_back(d);
    }
    const double sinr =
        field.redraw_sinr_linear(serving_distance, interferers, rng);
    rates[i] = params.bandwidth_hz * spectral_efficiency(sinr, cap_bps_hz);
  });

  double sum = 0.0;
  for (double r : rates) sum += r;
  return sum / n_draws;
}

double throughput_bps(double mean_rate_bps, double duration_ratio) {
  return mean_rate_bps * duration_ratio;
}

ConnectivityMetrics evaluate_point(const MetricsPoint& point,
                                   const ScenarioParams& base,
                                   const ChannelParams& channel,
                                   const MetricsSweepOptions& options) {
  if (!std::isfinite(point.r_comm_m) || point.r_comm_m <= 0.0) {
    throw std::invalid_argument(
        "missing R_comm for grid point rho=" +
        std::to_string(nodes_per_m_to_per_km(point.rho_per_m)) +
        "/km, V=" + std::to_string(mps_to_kmh(point.speed_mps)) +
        " km/h, T_RTO=" + std::to_string(point.t_rto_s) + " s");
  }

  ConnectivityMetrics m;
  m.p_start = p_start(point.rho_per_m, point.r_comm_m);
  m.p_no_leave_given_start =
      p_no_leave(point.rho_per_m, point.r_comm_m, point.speed_mps, point.t_rto_s);
  m.p_nl = p_nl(m.p_start, m.p_no_leave_given_start);
  m.e_tl_s = m.p_no_leave_given_start < 1.0
                 ? e_tl(point.rho_per_m, point.r_comm_m, point.speed_mps,
                        point.t_rto_s, options.etl_form)
                 : 0.0;
  m.e_tcomm_s =
      e_tcomm(m.p_start, m.p_no_leave_given_start, m.e_tl_s, point.t_rto_s);
  m.duration_ratio = m.e_tcomm_s / point.t_rto_s;

  if (options.with_rate) {
    ScenarioParams params = base;
    params.rho_per_m = point.rho_per_m;
    params.speed_mps = point.speed_mps;
    params.slot_duration_s = point.t_rto_s;
    params.bs_array = point.bs_array;
    params.veh_array = point.veh_array;
    m.rate_bps = mean_rate_bps(params, channel, point.r_comm_m,
                               options.rate_draws, options.seed, 7.4,
                               options.jobs);
    m.throughput_bps = throughput_bps(m.rate_bps, m.duration_ratio);
  }
  return m;
}

std::vector<ConnectivityMetrics> metrics_sweep(
    std::span<const MetricsPoint> grid, const ScenarioParams& base,
    const ChannelParams& channel, const MetricsSweepOptions& options) {
  if (grid.empty()) {
    throw std::invalid_argument("metrics_sweep requires a nonempty grid");
  }
  std::vector<ConnectivityMetrics> out;
  out.reserve(grid.size());
  std::uint64_t index = 0;
  for (const MetricsPoint& point : grid) {
    MetricsSweepOptions point_options = options;
    point_options.seed = mix_seed(options.seed, {0x726174, index++});
    out.push_back(evaluate_point(point, base, channel, point_options));
  }
  return out;
}

}  // namespace mmwv2i
