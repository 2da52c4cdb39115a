// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the mmwv2i authors

#include "mmwv2i/road_sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "mmwv2i/connectivity.hpp"
#include "mmwv2i/detail/parallel.hpp"
#include "mmwv2i/rng.hpp"
#include "mmwv2i/units.hpp"

namespace mmwv2i {

namespace {

struct BatchStat {
  double mean = 0.0;
  double se = 0.0;
};

/// Mean and batch-means standard error of per-slot values. Slots are
/// correlated (the vehicle moves a fraction of a node spacing per slot), so
/// contiguous batches rather than per-slot variance drive the SE.
template <typename Get>
BatchStat batch_stat(std::span<const SlotTrace> traces, int n_batches, Get get) {
  const std::int64_t n = static_cast<std::int64_t>(traces.size());
  double total = 0.0;
  for (const SlotTrace& t : traces) total += get(t);
  BatchStat s;
  s.mean = total / static_cast<double>(n);

  n_batches = static_cast<int>(std::min<std::int64_t>(n_batches, n));
  if (n_batches < 2) return s;
  const std::int64_t batch_len = n / n_batches;
  double var = 0.0;
  for (int b = 0; b < n_batches; ++b) {
    double bsum = 0.0;
    for (std::int64_t i = b * batch_len; i < (b + 1) * batch_len; ++i) {
      bsum += get(traces[i]);
    }
    const double d = bsum / static_cast<double>(batch_len) - s.mean;
    var += d * d;
  }
  var /= (n_batches - 1);
  s.se = std::sqrt(var / n_batches);
  return s;
}

}  // namespace

std::vector<SlotTrace> simulate_road(const ScenarioParams& params,
                                     double r_comm_m, std::int64_t n_slots,
                                     std::uint64_t seed) {
  params.validate();
  if (!(r_comm_m > 0.0)) {
    throw std::invalid_argument("simulate_road requires r_comm > 0");
  }
  if (n_slots < 1000) {
    throw std::invalid_argument("simulate_road requires n_slots >= 1000");
  }

  const double rho = params.rho_per_m;
  const double travel = params.speed_mps * params.slot_duration_s;
  const double t_slot = params.slot_duration_s;

  auto rng = make_rng(seed, RngStream::kRoadSim);
  std::exponential_distribution<double> gap(rho);

  // Sliding deployment window: keep nodes from one behind the vehicle to
  // comfortably past its per-slot lookahead, extending with fresh
  // exponential gaps and dropping what falls behind.
  const double lookahead = std::max(r_comm_m, travel) + 10.0 / rho;
  std::deque<double> nodes;
  double x = 0.0;
  nodes.push_back(x - gap(rng));  // nearest node behind; PPP is symmetric
  nodes.push_back(x + gap(rng));
  while (nodes.back() < x + lookahead) nodes.push_back(nodes.back() + gap(rng));

  std::vector<SlotTrace> traces;
  traces.reserve(n_slots);
  for (std::int64_t slot = 0; slot < n_slots; ++slot) {
    while (nodes.back() < x + lookahead) {
      nodes.push_back(nodes.back() + gap(rng));
    }
    while (nodes.size() > 2 && nodes[1] <= x) {
      nodes.pop_front();
    }

    const double behind = x - nodes[0];
    const double ahead = nodes[1] - x;

    SlotTrace t;
    t.slot = slot;
    t.x_vehicle_m = x;
    t.serving_distance_m = std::min(behind, ahead);
    t.ahead_distance_m = ahead;
    t.gap_m = behind + ahead;
    t.connected_at_start = t.serving_distance_m <= r_comm_m;
    t.ahead_connected = ahead <= r_comm_m;
    t.gap_within_2r = t.gap_m <= 2.0 * r_comm_m;
    t.overtook = t.ahead_connected && ahead <= travel;

    // Serve-ahead machine: full slot unless the served node is overtaken.
    if (t.ahead_connected) {
      t.aligned_time_s = t.overtook ? ahead / params.speed_mps : t_slot;
    }

    // Serve-nearest machine: a node behind recedes but stays aligned; a
    // node ahead is lost at the overtake instant.
    if (t.connected_at_start) {
      if (behind <= ahead) {
        t.connected_time_s = t_slot;
      } else {
        t.connected_time_s = ahead <= travel ? ahead / params.speed_mps : t_slot;
      }
    }

    traces.push_back(t);
    x += travel;
  }
  return traces;
}

EmpiricalMetrics empirical_metrics(std::span<const SlotTrace> traces,
                                   double slot_duration_s) {
  if (traces.empty()) {
    throw std::invalid_argument("empirical_metrics requires nonempty traces");
  }
  const std::int64_t n = static_cast<std::int64_t>(traces.size());
  const int n_batches = static_cast<int>(std::clamp<std::int64_t>(n / 20, 2, 50));

  EmpiricalMetrics m;
  m.n_slots = n;

  const auto start = batch_stat(traces, n_batches, [](const SlotTrace& t) {
    return t.connected_at_start ? 1.0 : 0.0;
  });
  m.p_start = start.mean;
  m.p_start_se = start.se;

  const auto gap = batch_stat(traces, n_batches, [](const SlotTrace& t) {
    return t.gap_within_2r ? 1.0 : 0.0;
  });
  m.p_start_gap = gap.mean;
  m.p_start_gap_se = gap.se;

  const auto ahead = batch_stat(traces, n_batches, [](const SlotTrace& t) {
    return t.ahead_connected ? 1.0 : 0.0;
  });
  m.p_start_ahead = ahead.mean;
  m.p_start_ahead_se = ahead.se;

  // Survival frequency on the ahead-connected population, i.e. the
  // conditional the closed form composes with P_start.
  std::int64_t n_ahead = 0, n_overtook = 0;
  double tl_sum = 0.0, tl_sq = 0.0;
  bool prev_idle = false;
  for (const SlotTrace& t : traces) {
    n_ahead += t.ahead_connected ? 1 : 0;
    if (!t.connected_at_start) {
      ++m.n_idle_slots;
      if (!prev_idle) ++m.n_idle_clusters;
    }
    prev_idle = !t.connected_at_start;
    if (t.overtook) {
      ++n_overtook;
      const double tl = t.aligned_time_s;
      tl_sum += tl;
      tl_sq += tl * tl;
    }
  }
  m.n_ahead_connected = n_ahead;
  m.n_overtakes = n_overtook;
  const double leave_frac =
      n_ahead > 0 ? static_cast<double>(n_overtook) / n_ahead : 0.0;
  m.p_no_leave = 1.0 - leave_frac;
  if (n_ahead > 1) {
    m.p_no_leave_se = std::sqrt(leave_frac * (1.0 - leave_frac) / n_ahead);
  }

  if (n_overtook > 0) {
    m.e_tl_s = tl_sum / n_overtook;
    if (n_overtook > 1) {
      const double var =
          (tl_sq - n_overtook * m.e_tl_s * m.e_tl_s) / (n_overtook - 1);
      m.e_tl_se = std::sqrt(std::max(var, 0.0) / n_overtook);
    }
  }

  // Composed estimators, with batch-means SEs of the composition.
  m.p_nl = m.p_start * m.p_no_leave;
  m.e_tcomm_s = m.p_start * (m.p_no_leave * slot_duration_s +
                             leave_frac * m.e_tl_s);
  {
    const std::int64_t batch_len = n / n_batches;
    double var_pnl = 0.0, var_etc = 0.0;
    int used = 0;
    for (int b = 0; b < n_batches; ++b) {
      std::int64_t bs = 0, ba = 0, bo = 0;
      double btl = 0.0;
      for (std::int64_t i = b * batch_len; i < (b + 1) * batch_len; ++i) {
        const SlotTrace& t = traces[i];
        bs += t.connected_at_start ? 1 : 0;
        ba += t.ahead_connected ? 1 : 0;
        if (t.overtook) {
          ++bo;
          btl += t.aligned_time_s;
        }
      }
      if (ba == 0) continue;
      const double b_ps = static_cast<double>(bs) / batch_len;
      const double b_leave = static_cast<double>(bo) / ba;
      const double b_etl = bo > 0 ? btl / bo : 0.0;
      const double b_pnl = b_ps * (1.0 - b_leave);
      const double b_etc =
          b_ps * ((1.0 - b_leave) * slot_duration_s + b_leave * b_etl);
      var_pnl += (b_pnl - m.p_nl) * (b_pnl - m.p_nl);
      var_etc += (b_etc - m.e_tcomm_s) * (b_etc - m.e_tcomm_s);
      ++used;
    }
    if (used > 1) {
      m.p_nl_se = std::sqrt(var_pnl / (used - 1) / used);
      m.e_tcomm_se = std::sqrt(var_etc / (used - 1) / used);
    }
  }

  // Serve-nearest: a slot is kept when connected and the nearest node was
  // not overtaken, i.e. the machine ran the full slot.
  const auto pnl_direct =
      batch_stat(traces, n_batches, [slot_duration_s](const SlotTrace& t) {
        return (t.connected_at_start && t.connected_time_s == slot_duration_s)
                   ? 1.0
                   : 0.0;
      });
  m.p_nl_direct = pnl_direct.mean;
  m.p_nl_direct_se = pnl_direct.se;

  const auto etc_direct = batch_stat(
      traces, n_batches, [](const SlotTrace& t) { return t.connected_time_s; });
  m.e_tcomm_direct_s = etc_direct.mean;
  m.e_tcomm_direct_se = etc_direct.se;

  return m;
}

std::vector<ValidationRow> run_validation_grid(
    std::span<const ValidationPoint> grid, const ScenarioParams& base,
    const ValidationOptions& options) {
  if (grid.empty()) {
    throw std::invalid_argument("validation grid is empty");
  }
  if (options.n_runs < 2) {
    throw std::invalid_argument("validation needs at least 2 replications");
  }
  const std::int64_t slots_per_run =
      std::max<std::int64_t>(1000, options.n_slots / options.n_runs);

  struct RunResult {
    double p_start = 0.0, p_gap = 0.0, p_ahead = 0.0;
    double p_no_leave = 0.0, p_nl = 0.0, e_tcomm = 0.0;
    double p_nl_direct = 0.0, e_tcomm_direct = 0.0;
    double tl_sum = 0.0, tl_sq = 0.0;
    std::int64_t n_ahead = 0;
    std::int64_t n_overtakes = 0;
    std::int64_t n_idle_slots = 0;
    std::int64_t n_idle_clusters = 0;
  };

  const std::int64_t n_points = static_cast<std::int64_t>(grid.size());
  const std::int64_t total_runs = n_points * options.n_runs;
  std::vector<RunResult> runs(total_runs);

  detail::parallel_for_index(total_runs, options.jobs, [&](std::int64_t idx) {
    const std::int64_t pi = idx / options.n_runs;
    const std::int64_t ri = idx % options.n_runs;
    const ValidationPoint& pt = grid[pi];

    ScenarioParams params = base;
    params.rho_per_m = pt.rho_per_m;
    params.speed_mps = pt.speed_mps;
    params.slot_duration_s = pt.t_rto_s;

    const std::uint64_t run_seed =
        mix_seed(options.seed, {0x76616c, static_cast<std::uint64_t>(pi),
                                static_cast<std::uint64_t>(ri)});
    const auto traces =
        simulate_road(params, pt.r_comm_m, slots_per_run, run_seed);
    const EmpiricalMetrics em = empirical_metrics(traces, pt.t_rto_s);

    RunResult& r = runs[idx];
    r.p_start = em.p_start;
    r.p_gap = em.p_start_gap;
    r.p_ahead = em.p_start_ahead;
    r.p_no_leave = em.p_no_leave;
    r.p_nl = em.p_nl;
    r.e_tcomm = em.e_tcomm_s;
    r.p_nl_direct = em.p_nl_direct;
    r.e_tcomm_direct = em.e_tcomm_direct_s;
    r.n_ahead = em.n_ahead_connected;
    r.n_overtakes = em.n_overtakes;
    r.n_idle_slots = em.n_idle_slots;
    r.n_idle_clusters = em.n_idle_clusters;
    for (const SlotTrace& t : traces) {
      if (t.overtook) {
        r.tl_sum += t.aligned_time_s;
        r.tl_sq += t.aligned_time_s * t.aligned_time_s;
      }
    }
  });

  auto mean_se = [&](std::int64_t pi, auto field) {
    double mean = 0.0;
    for (int ri = 0; ri < options.n_runs; ++ri) {
      mean += field(runs[pi * options.n_runs + ri]);
    }
    mean /= options.n_runs;
    double var = 0.0;
    for (int ri = 0; ri < options.n_runs; ++ri) {
      const double d = field(runs[pi * options.n_runs + ri]) - mean;
      var += d * d;
    }
    var /= (options.n_runs - 1);
    return std::pair<double, double>(mean, std::sqrt(var / options.n_runs));
  };

  // When every replication lands on the same value (near-sure events) the
  // replication SE degenerates to 0; probabilities then fall back to the
  // binomial SE at the analytic value over the relevant trial count.
  auto z_score = [](double empirical, double analytic, double se,
                    std::int64_t binomial_n) {
    const double diff = empirical - analytic;
    if (se == 0.0 && binomial_n > 0 && analytic > 0.0 && analytic < 1.0) {
      se = std::sqrt(analytic * (1.0 - analytic) / binomial_n);
    }
    if (se == 0.0) {
      return std::abs(diff) < 1e-9 ? 0.0
                                   : std::numeric_limits<double>::infinity();
    }
    return diff / se;
  };

  // Idle slots come in contiguous clusters (one per coverage hole), so for
  // p_start the per-slot binomial variance is far too optimistic. The floor
  // treats the hole count as Poisson with exponential hole lengths:
  //   Var(n_idle) ~ k * 2 * mean_len^2.
  auto idle_se_floor = [&](std::int64_t n_idle, std::int64_t k,
                           double expected_len_slots, std::int64_t n_total) {
    const double len = k > 0 ? static_cast<double>(n_idle) / k
                             : expected_len_slots;
    const double clusters = std::max<double>(k, 1.0);
    return std::sqrt(2.0 * clusters) * len / static_cast<double>(n_total);
  };

  std::vector<ValidationRow> rows;
  rows.reserve(n_points);
  const double perturb = 1.0 + options.analytic_perturbation;

  for (std::int64_t pi = 0; pi < n_points; ++pi) {
    const ValidationPoint& pt = grid[pi];
    ValidationRow row;
    row.point = pt;

    const std::int64_t total_slots = slots_per_run * options.n_runs;
    std::int64_t total_ahead = 0, total_idle = 0, total_clusters = 0;
    for (int ri = 0; ri < options.n_runs; ++ri) {
      const RunResult& r = runs[pi * options.n_runs + ri];
      total_ahead += r.n_ahead;
      total_idle += r.n_idle_slots;
      total_clusters += r.n_idle_clusters;
    }
    const double travel = pt.speed_mps * pt.t_rto_s;
    const double hole_len_slots =
        travel > 0.0 ? 1.0 / (pt.rho_per_m * travel) : 1.0;
    const double ps_floor = idle_se_floor(total_idle, total_clusters,
                                          hole_len_slots, total_slots);

    const double cf_ps = p_start(pt.rho_per_m, pt.r_comm_m) * perturb;
    const double cf_pnl_cond =
        p_no_leave(pt.rho_per_m, pt.r_comm_m, pt.speed_mps, pt.t_rto_s) *
        perturb;
    const double cf_etl = e_tl(pt.rho_per_m, pt.r_comm_m, pt.speed_mps,
                               pt.t_rto_s, AlignedTimeForm::kDefinition) *
                          perturb;
    const double cf_etl_paper =
        e_tl(pt.rho_per_m, pt.r_comm_m, pt.speed_mps, pt.t_rto_s,
             AlignedTimeForm::kPaperDisplayed);
    const double cf_pnl = cf_ps * cf_pnl_cond;
    const double cf_etc = e_tcomm(cf_ps, cf_pnl_cond, cf_etl, pt.t_rto_s);

    auto add = [&](const std::string& name, double analytic,
                   std::pair<double, double> emp, bool gated,
                   std::int64_t binomial_n, double se_floor) {
      const double se = std::max(emp.second, se_floor);
      row.comparisons.push_back(MetricComparison{
          name, analytic, emp.first, se,
          z_score(emp.first, analytic, se, binomial_n), gated});
    };

    add("p_start", cf_ps, mean_se(pi, [](const RunResult& r) { return r.p_start; }),
        true, 0, ps_floor);
    add("p_no_leave", cf_pnl_cond,
        mean_se(pi, [](const RunResult& r) { return r.p_no_leave; }), true,
        total_ahead, 0.0);
    add("p_nl", cf_pnl, mean_se(pi, [](const RunResult& r) { return r.p_nl; }),
        true, 0, ps_floor * cf_pnl_cond);
    add("e_tcomm_s", cf_etc,
        mean_se(pi, [](const RunResult& r) { return r.e_tcomm; }), true, 0,
        cf_ps > 0.0 ? ps_floor * cf_etc / cf_ps : 0.0);

    // E[T_L]: overtake samples are independent across events, pool them.
    {
      double tl_sum = 0.0, tl_sq = 0.0;
      std::int64_t n_ot = 0;
      for (int ri = 0; ri < options.n_runs; ++ri) {
        const RunResult& r = runs[pi * options.n_runs + ri];
        tl_sum += r.tl_sum;
        tl_sq += r.tl_sq;
        n_ot += r.n_overtakes;
      }
      double mean = 0.0, se = 0.0;
      if (n_ot > 1) {
        mean = tl_sum / n_ot;
        const double var = (tl_sq - n_ot * mean * mean) / (n_ot - 1);
        se = std::sqrt(std::max(var, 0.0) / n_ot);
      }
      row.comparisons.push_back(MetricComparison{
          "e_tl_s", cf_etl, mean, se, z_score(mean, cf_etl, se, 0), true});
      row.comparisons.push_back(
          MetricComparison{"e_tl_s_paper_displayed", cf_etl_paper, mean, se,
                           z_score(mean, cf_etl_paper, se, 0), false});
    }

    // Diagnostics: alternate event definitions against the same forms.
    add("p_start_gap_event", cf_ps,
        mean_se(pi, [](const RunResult& r) { return r.p_gap; }), false, 0,
        ps_floor);
    add("p_start_ahead_event", cf_ps,
        mean_se(pi, [](const RunResult& r) { return r.p_ahead; }), false, 0,
        ps_floor);
    add("p_nl_direct", cf_pnl,
        mean_se(pi, [](const RunResult& r) { return r.p_nl_direct; }), false, 0,
        ps_floor);
    add("e_tcomm_direct_s", cf_etc,
        mean_se(pi, [](const RunResult& r) { return r.e_tcomm_direct; }), false,
        0, 0.0);

    rows.push_back(std::move(row));
  }
  return rows;
}

double max_gated_z(std::span<const ValidationRow> rows) {
  double worst = 0.0;
  for (const ValidationRow& row : rows) {
    for (const MetricComparison& c : row.comparisons) {
      if (c.gated) worst = std::max(worst, std::abs(c.z));
    }
  }
  return worst;
}

}  // namespace mmwv2i
