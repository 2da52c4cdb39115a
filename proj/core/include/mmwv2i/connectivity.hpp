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

#include <cstdint>
#include <span>
#include <vector>

#include "mmwv2i/channel.hpp"
#include "mmwv2i/scenario.hpp"

// Closed-form slot-connectivity model. At every slot boundary of duration
// T_RTO the beams realign; during a slot the vehicle can lose the link by
// overtaking its serving node. All quantities below are per-slot.

namespace mmwv2i {

/// P_start = P[nearest node within R_comm] = 1 - exp(-2 rho R_comm).
double p_start(double rho_per_m, double r_comm_m);

/// Probability of keeping the alignment through a slot, given a connection:
///   P(T_L > T_RTO) = (exp(-rho V T) - exp(-rho R)) / (1 - exp(-rho R)).
/// Clamped to 0 when V * T_RTO >= R_comm (outside the model's regime);
/// equals 1 for a stationary vehicle.
double p_no_leave(double rho_per_m, double r_comm_m, double speed_mps,
                  double t_rto_s);

/// P_NL = P_start * P(T_L > T_RTO).
double p_nl(double p_start, double p_no_leave);

/// Choice between the definition-line expectation and the expression as
/// displayed in the source analysis (which retains a non-cancelling
/// normalization factor; kept for side-by-side comparison).
enum class AlignedTimeForm { kDefinition, kPaperDisplayed };

/// Mean aligned time E[T_L] given that the vehicle overtakes its serving
/// node within the slot: the mean of an Exp(rho) distance truncated at
/// min(V T_RTO, R_comm), divided by V. Strictly below T_RTO. Throws for a
/// stationary vehicle (no leave event exists; callers must branch on
/// p_no_leave == 1).
double e_tl(double rho_per_m, double r_comm_m, double speed_mps, double t_rto_s,
            AlignedTimeForm form = AlignedTimeForm::kDefinition);

/// E[T_comm] = P_start [ P(T_L > T_RTO) T_RTO + (1 - P(T_L > T_RTO)) E[T_L] ].
double e_tcomm(double p_start, double p_no_leave, double e_tl_s, double t_rto_s);

/// Shannon spectral efficiency with a practical modulation cap, b/s/Hz.
double spectral_efficiency(double sinr_linear, double cap_bps_hz = 7.4);

/// Monte Carlo mean of W_tot * min(log2(1 + SINR), cap) with the serving
/// node at distance min(1/rho, R_comm) and full-buffer interference from a
/// fresh deployment drop per realization.
double mean_rate_bps(const ScenarioParams& params, const ChannelParams& channel,
                     double r_comm_m, int n_draws, std::uint64_t seed,
                     double cap_bps_hz = 7.4, int jobs = 0);

/// B = E[R(d)] * E[T_comm] / T_RTO.
double throughput_bps(double mean_rate_bps, double duration_ratio);

/// All per-slot metrics of one parameter point.
struct ConnectivityMetrics {
  double p_start = 0.0;
  double p_no_leave_given_start = 0.0;
  double p_nl = 0.0;
  double e_tl_s = 0.0;  // 0 when no leave event exists (V = 0)
  double e_tcomm_s = 0.0;
  double duration_ratio = 0.0;
  double rate_bps = 0.0;
  double throughput_bps = 0.0;
};

/// One grid point of a metrics sweep.
struct MetricsPoint {
  double rho_per_m = 0.0;
  double speed_mps = 0.0;
  double t_rto_s = 0.0;
  AntennaArray bs_array;
  AntennaArray veh_array;
  double r_comm_m = 0.0;  // NaN marks a missing value and is an error
};

struct MetricsSweepOptions {
  AlignedTimeForm etl_form = AlignedTimeForm::kDefinition;
  bool with_rate = true;
  int rate_draws = 1000;
  std::uint64_t seed = 1;
  int jobs = 0;
};

/// Closed-form metrics for a single point; rate/throughput only when
/// requested (they are the Monte Carlo part).
ConnectivityMetrics evaluate_point(const MetricsPoint& point,
                                   const ScenarioParams& base,
                                   const ChannelParams& channel,
                                   const MetricsSweepOptions& options);

/// Evaluates every grid point; row order follows the input. Throws,
/// naming the point, when a point has no R_comm.
std::vector<ConnectivityMetrics> metrics_sweep(
    std::span<const MetricsPoint> grid, const ScenarioParams& base,
    const ChannelParams& channel, const MetricsSweepOptions& options);

}  // namespace mmwv2i
