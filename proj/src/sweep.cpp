#include "neurodyn/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "neurodyn/bce.hpp"
#include "neurodyn/ode.hpp"
#include "neurodyn/rng.hpp"
#include "neurodyn/specfn.hpp"

namespace neurodyn::sweep {

int thread_cap() {
#ifdef _OPENMP
  if (const char* env = std::getenv("NEURODYN_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

// Runs fn(i) for i in [0, n), serially or under OpenMP. The per-index work
// is shared between the two paths, so results are bit-identical.
template <class Fn>
void for_each_index(std::size_t n, Execution exec, Fn&& fn) {
#ifdef _OPENMP
  if (exec == Execution::Parallel) {
    const int threads = thread_cap();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      fn(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)exec;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace

std::vector<PhaseScanRow> phase_scan(const PhaseScanConfig& config,
                                     Execution exec) {
  if (config.grid < 2) throw std::domain_error("phase_scan: grid must be >= 2");
  if (!(config.range > 0.0)) {
    throw std::domain_error("phase_scan: range must be > 0");
  }
  const std::size_t g = static_cast<std::size_t>(config.grid);
  std::vector<PhaseScanRow> rows(g * g);

  for_each_index(g * g, exec, [&](std::size_t idx) {
    const std::size_t iy = idx / g;
    const std::size_t iz = idx % g;
    const double h = 2.0 * config.range / (config.grid - 1);
    const double y0 = -config.range + static_cast<double>(iy) * h;
    const double z0 = -config.range + static_cast<double>(iz) * h;
    // The class-2 diagram is the class-1 diagram mirrored in z.
    const double z_eff = config.mirror_class2 ? -z0 : z0;
    const auto check =
        phase::verify_fate(y0, z_eff, config.norm, config.t_end, config.step);
    rows[idx] = {y0,          z0,
                 config.norm, check.region.kind,
                 check.region.boundary, check.observed,
                 check.agree};
  });
  return rows;
}

GridErrorResult degenerate_grid_error(const DegenerateGridConfig& config,
                                      Execution exec) {
  const std::size_t n = config.u0s.size() * config.rates.size();
  std::vector<double> errors(n, 0.0);
  std::vector<double> bound_violations(n, 0.0);
  std::vector<std::size_t> counts(n, 0);

  for_each_index(n, exec, [&](std::size_t idx) {
    const double u0 = config.u0s[idx / config.rates.size()];
    const double rate = config.rates[idx % config.rates.size()];

    ode::OdeSystem system{
        1,
        [rate](double, std::span<const double> s, std::span<double> d) {
          d[0] = 2.0 * rate * s[0] * specfn::sigmoid(-s[0]);
        },
        "degenerate logit oracle"};
    const auto run =
        ode::integrate(system, {u0}, config.t_end, config.oracle_step);

    // Compare on the sample_dt grid; those times land on oracle indices
    // because sample_dt is a multiple of the oracle step.
    const std::size_t stride = static_cast<std::size_t>(
        std::llround(config.sample_dt / config.oracle_step));
    double worst = 0.0;
    double worst_violation = 0.0;
    std::size_t points = 0;
    for (std::size_t i = 0; i < run.size(); i += stride) {
      const double t = run.time(i);
      const double closed = bce::solve_degenerate(u0, rate, t);
      worst = std::max(worst, std::abs(closed - run.state(i)[0]));
      const double bound = bce::convergence_bound(u0, rate, t);
      worst_violation = std::max(worst_violation, closed - bound);
      ++points;
    }
    errors[idx] = worst;
    bound_violations[idx] = worst_violation;
    counts[idx] = points;
  });

  GridErrorResult out;
  for (std::size_t i = 0; i < n; ++i) {
    out.max_abs_error = std::max(out.max_abs_error, errors[i]);
    out.max_bound_violation =
        std::max(out.max_bound_violation, bound_violations[i]);
    out.points += counts[i];
  }
  return out;
}

double max_invariant_drift(const DriftConfig& config, Execution exec) {
  std::vector<double> drifts(config.runs, 0.0);

  for_each_index(config.runs, exec, [&](std::size_t idx) {
    rng::SplitMix64 gen(config.seed + idx);
    const double y0 = gen.uniform(0.05, 1.5);
    const double z0 = gen.uniform(-1.2, 1.2);
    const double norm = gen.uniform(0.4, 1.5);

    const auto run = ode::integrate(bce::mode_system(norm), {y0, z0},
                                    config.t_end, config.step);
    const double n2 = norm * norm;
    const double c0 = y0 * y0 - n2 * z0 * z0;
    double worst = 0.0;
    for (std::size_t i = 0; i < run.size(); ++i) {
      const auto s = run.state(i);
      worst = std::max(worst, std::abs(s[0] * s[0] - n2 * s[1] * s[1] - c0));
    }
    drifts[idx] = worst;
  });
  return *std::max_element(drifts.begin(), drifts.end());
}

namespace {

sim::TrainConfig fleet_train_config(std::uint64_t seed, long steps, double lr) {
  sim::TrainConfig tc;
  tc.learning_rate = lr;
  tc.steps = steps;
  tc.seed = seed;
  tc.sampling = sim::Sampling::Uniform;
  tc.loss = sim::Loss::Bce;
  tc.record_params = true;
  return tc;
}

}  // namespace

FleetResult lemma_fleet(const FleetConfig& config, Execution exec) {
  std::vector<long> violations(config.runs, 0);
  std::vector<long> snapshots(config.runs, 0);

  for_each_index(config.runs, exec, [&](std::size_t idx) {
    const std::uint64_t seed = config.base_seed + 1000 * idx;
    const int h = config.hidden_sizes[idx % config.hidden_sizes.size()];
    const std::size_t d = 4 + idx % 5;
    const auto ds = sim::make_dataset(seed, d, 3, 30.0, 0.6, 1.4);
    const auto p0 = sim::make_h23_params(ds, h, seed + 1);
    const auto result = sim::train(
        p0, ds, fleet_train_config(seed + 2, config.steps, config.learning_rate));
    const auto report = sim::check_mode_independence(result.history, ds);
    violations[idx] = report.total();
    snapshots[idx] = report.snapshots;
  });

  FleetResult out;
  out.runs = config.runs;
  for (int i = 0; i < config.runs; ++i) {
    out.violations += violations[i];
    out.snapshots += snapshots[i];
  }
  return out;
}

FleetResult multiclass_fleet(const MultiClassFleetConfig& config,
                             Execution exec) {
  std::vector<long> violations(config.runs, 0);
  std::vector<long> snapshots(config.runs, 0);

  for_each_index(config.runs, exec, [&](std::size_t idx) {
    const std::uint64_t seed = config.base_seed + 1000 * idx;
    const std::size_t d = config.n_classes + idx % 4;
    const auto ds = sim::make_multiclass_dataset(seed, config.n_classes, d, 3,
                                                 14.0, 0.6, 1.4);
    const auto p0 = sim::make_multiclass_params(ds, seed + 1);
    const auto report = sim::run_multiclass_check(
        ds, p0, config.steps, config.learning_rate, seed + 2);
    violations[idx] = report.total();
    snapshots[idx] = report.snapshots;
  });

  FleetResult out;
  out.runs = config.runs;
  for (int i = 0; i < config.runs; ++i) {
    out.violations += violations[i];
    out.snapshots += snapshots[i];
  }
  return out;
}

long negative_control_violations(std::uint64_t seed) {
  const auto ds = sim::make_dataset(seed, 4, 3, 30.0, 0.6, 1.4);
  auto p0 = sim::make_h23_params(ds, 4, seed + 1);
  // Break H2: point one class-2 row at the class-1 cone.
  for (std::size_t i = 0; i < p0.h; ++i) {
    if (p0.cell[i] == 2) {
      for (std::size_t j = 0; j < p0.d; ++j) {
        p0.w[i * p0.d + j] = ds.class1.front()[j];
      }
      break;
    }
  }
  const auto result = sim::train(p0, ds, fleet_train_config(seed + 2, 50, 0.05));
  return sim::check_mode_independence(result.history, ds).total();
}

std::vector<SurfaceRow> starvation_surface(
    const std::vector<double>& lambdas, const std::vector<double>& deltas,
    const starvation::StarvationConfig& base, Execution exec) {
  const std::size_t n = lambdas.size() * deltas.size();
  std::vector<SurfaceRow> rows(n);

  for_each_index(n, exec, [&](std::size_t idx) {
    starvation::StarvationConfig cfg = base;
    cfg.lambda = lambdas[idx / deltas.size()];
    cfg.delta = deltas[idx % deltas.size()];
    const auto result = starvation::integrate_to_tstar(cfg);
    rows[idx] = {cfg.lambda,
                 cfg.delta,
                 starvation::starvation_bound(cfg.lambda, cfg.delta),
                 starvation::starvation_bound_relaxed(cfg.lambda, cfg.delta,
                                                      result.state.z,
                                                      cfg.alpha0, cfg.beta0),
                 result.state.conf_x2(),
                 result.t_star};
  });
  return rows;
}

}  // namespace neurodyn::sweep
