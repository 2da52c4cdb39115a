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
#include <string>
#include <utility>
#include <vector>

#include "mmwv2i/channel.hpp"
#include "mmwv2i/scenario.hpp"

namespace mmwv2i {

/// Knobs of the Monte Carlo coverage-radius estimator.
struct CoverageOptions {
  int n_redraws = 20;          // channel/shadowing redraws per probed distance
  double bisect_tol_m = 1.0;   // radius resolution
  double probe_min_m = 1.0;
  double probe_max_m = 512.0;  // beyond this the outage state is certain
  double interferer_cutoff_m = 450.0;
  int serving_candidates = 8;  // nearest nodes considered for serving
};

/// Mean coverage radius estimate for one (density, array) configuration.
struct CoverageResult {
  double r_comm_m = 0.0;
  double ci95_m = 0.0;  // 95% confidence half-width
  double rho_per_m = 0.0;
  int bs_elems = 0;
  int veh_elems = 0;
  int n_trials = 0;
  double zero_radius_fraction = 0.0;  // all-outage or immediately uncovered
  std::uint64_t seed = 0;
};

/// Estimates the mean coverage range R_comm by Monte Carlo over deployment
/// drops. Per trial: sample a drop, pick the serving node (the one with the
/// best post-beamforming SINR near the vehicle), then bisect on the
/// vehicle-to-serving distance for the largest distance at which the SINR,
/// averaged over redraws, still clears the configured threshold. All other
/// nodes interfere at full power throughout. Deterministic given the seed
/// and independent of the worker count. Throws when n_trials < 100.
CoverageResult estimate_coverage(const ScenarioParams& params,
                                 const ChannelParams& channel, int n_trials,
                                 std::uint64_t seed,
                                 const CoverageOptions& options = {},
                                 int jobs = 0);

/// (base station array, vehicle array) pair.
using ArrayConfig = std::pair<AntennaArray, AntennaArray>;

/// One cell of a coverage sweep; failed cells carry NaN and a reason.
struct CoverageSweepRow {
  CoverageResult result;
  std::string failure_reason;  // empty on success
};

/// Full cross-product sweep over densities and array configurations, row
/// order: densities outer, configurations inner. Failures are recorded per
/// cell rather than propagated.
std::vector<CoverageSweepRow> coverage_sweep(
    std::span<const double> densities_per_m,
    std::span<const ArrayConfig> configs, const ScenarioParams& base,
    const ChannelParams& channel, int n_trials, std::uint64_t seed,
    const CoverageOptions& options = {}, int jobs = 0);

}  // namespace mmwv2i
