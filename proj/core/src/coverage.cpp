// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the mmwv2i authors

#include "mmwv2i/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mmwv2i/detail/parallel.hpp"
#include "mmwv2i/detail/sinr_field.hpp"
#include "mmwv2i/rng.hpp"
#include "mmwv2i/units.hpp"

namespace mmwv2i {

namespace {

using detail::SinrField;

/// Interferer distances as seen from a probe position, excluding the
/// serving node and everything beyond the cutoff. Positions are sorted.
std::vector<double> interferer_distances(const std::vector<double>& positions,
                                         double probe_pos, double serving_pos,
                                         double cutoff) {
  std::vector<double> out;
  const auto lo = std::lower_bound(positions.begin(), positions.end(),
                                   probe_pos - cutoff);
  const auto hi =
      std::upper_bound(positions.begin(), positions.end(), probe_pos + cutoff);
  out.reserve(static_cast<std::size_t>(hi - lo));
  for (auto it = lo; it != hi; ++it) {
    if (*it == serving_pos) continue;
    out.push_back(std::abs(*it - probe_pos));
  }
  return out;
}

/// True when the averaged SINR clears the threshold. A threshold of
/// -infinity dB (zero linear) asks for any non-outage signal at all.
bool covered(double mean_sinr_linear, double threshold_linear) {
  if (threshold_linear == 0.0) return mean_sinr_linear > 0.0;
  return mean_sinr_linear >= threshold_linear;
}

struct TrialOutcome {
  double radius_m = 0.0;
  bool zero_radius = false;
};

TrialOutcome run_trial(const SinrField& field, const CoverageOptions& opt,
                       std::uint64_t seed, std::uint64_t trial_index) {
  const ScenarioParams& params = field.scenario();
  auto rng = make_rng(seed, RngStream::kCoverage, trial_index);
  const Drop drop = sample_drop(params, rng());
  const double veh = drop.an_position_m;
  const double gamma_linear = db_to_linear(params.sinr_threshold_db);

  // Serving selection: best single-redraw post-beamforming SINR among the
  // nearest candidate nodes.
  std::vector<std::pair<double, double>> candidates;  // |distance|, position
  for (double pos : drop.in_positions_m) {
    const double d = std::abs(pos - veh);
    if (d <= opt.interferer_cutoff_m) candidates.emplace_back(d, pos);
  }
  std::sort(candidates.begin(), candidates.end());
  if (candidates.size() > static_cast<std::size_t>(opt.serving_candidates)) {
    candidates.resize(opt.serving_candidates);
  }

  double best_sinr = 0.0;
  double serving_pos = std::numeric_limits<double>::quiet_NaN();
  for (const auto& [d, pos] : candidates) {
    const std::vector<double> others = interferer_distances(
        drop.in_positions_m, veh, pos, opt.interferer_cutoff_m);
    const double sinr = field.redraw_sinr_linear(d, others, rng);
    if (sinr > best_sinr) {
      best_sinr = sinr;
      serving_pos = pos;
    }
  }
  if (!std::isfinite(serving_pos)) {
    return {0.0, true};  // every candidate was in outage
  }

  // Probe the vehicle outward from the serving node on its initial side.
  const double direction = veh >= serving_pos ? 1.0 : -1.0;
  auto mean_sinr_at = [&](double distance) {
    const double probe_pos = serving_pos + direction * distance;
    const std::vector<double> others = interferer_distances(
        drop.in_positions_m, probe_pos, serving_pos, opt.interferer_cutoff_m);
    return field.mean_sinr_linear(distance, others, opt.n_redraws, rng);
  };

  if (!covered(mean_sinr_at(opt.probe_min_m), gamma_linear)) {
    return {0.0, true};
  }

  double lo = opt.probe_min_m;
  double hi = opt.probe_max_m;
  while (hi - lo > opt.bisect_tol_m) {
    const double mid = 0.5 * (lo + hi);
    if (covered(mean_sinr_at(mid), gamma_linear)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, false};
}

}  // namespace

CoverageResult estimate_coverage(const ScenarioParams& params,
                                 const ChannelParams& channel, int n_trials,
                                 std::uint64_t seed,
                                 const CoverageOptions& options, int jobs) {
  if (n_trials < 100) {
    throw std::invalid_argument("estimate_coverage requires n_trials >= 100");
  }
  const SinrField field(params, channel);

  std::vector<TrialOutcome> outcomes(n_trials);
  detail::parallel_for_index(n_trials, jobs, [&](std::int64_t i) {
    outcomes[i] = run_trial(field, options, seed, static_cast<std::uint64_t>(i));
  });

  double sum = 0.0;
  double zero_count = 0.0;
  for (const TrialOutcome& o : outcomes) {
    sum += o.radius_m;
    zero_count += o.zero_radius ? 1.0 : 0.0;
  }
  const double mean = sum / n_trials;
  double var = 0.0;
  for (const TrialOutcome& o : outcomes) {
    const double d = o.radius_m - mean;
    var += d * d;
  }
  var /= std::max(1, n_trials - 1);

  CoverageResult result;
  result.r_comm_m = mean;
  result.ci95_m = 1.96 * std::sqrt(var / n_trials);
  result.rho_per_m = params.rho_per_m;
  result.bs_elems = params.bs_array.elements();
  result.veh_elems = params.veh_array.elements();
  result.n_trials = n_trials;
  result.zero_radius_fraction = zero_count / n_trials;
  result.seed = seed;
  return result;
}

std::vector<CoverageSweepRow> coverage_sweep(
    std::span<const double> densities_per_m,
    std::span<const ArrayConfig> configs, const ScenarioParams& base,
    const ChannelParams& channel, int n_trials, std::uint64_t seed,
    const CoverageOptions& options, int jobs) {
  if (densities_per_m.empty() || configs.empty()) {
    throw std::invalid_argument("coverage_sweep requires nonempty grids");
  }

  std::vector<CoverageSweepRow> rows;
  rows.reserve(densities_per_m.size() * configs.size());
  std::uint64_t cell = 0;
  for (double rho : densities_per_m) {
    for (const ArrayConfig& cfg : configs) {
      ScenarioParams params = base;
      params.rho_per_m = rho;
      params.bs_array = cfg.first;
      params.veh_array = cfg.second;
      const std::uint64_t cell_seed = mix_seed(seed, {0x636f76, cell++});

      CoverageSweepRow row;
      try {
        row.result = estimate_coverage(params, channel, n_trials, cell_seed,
                                       options, jobs);
      } catch (const std::exception& e) {
        row.result.r_comm_m = std::numeric_limits<double>::quiet_NaN();
        row.result.ci95_m = std::numeric_limits<double>::quiet_NaN();
        row.result.rho_per_m = rho;
        row.result.bs_elems = cfg.first.elements();
        row.result.veh_elems = cfg.second.elements();
        row.result.n_trials = n_trials;
        row.result.seed = cell_seed;
        row.failure_reason = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace mmwv2i
