#pragma once

#include <cstdint>
#include <vector>

#include "neurodyn/phase.hpp"
#include "neurodyn/sim.hpp"
#include "neurodyn/starvation.hpp"

// Data-parallel scan kernels. Every kernel has a serial reference path and
// an OpenMP path over the same per-index body, so the two must produce
// bit-identical results; tests assert that and the benchmark tool compares
// their timings. Thread count is capped by the NEURODYN_THREADS environment
// variable.
namespace neurodyn::sweep {

enum class Execution { Serial, Parallel };

// Worker count for parallel kernels: NEURODYN_THREADS if set and positive,
// otherwise the OpenMP default. Returns 1 when built without OpenMP.
int thread_cap();

// ---- Phase-diagram scan ----

struct PhaseScanConfig {
  double norm = 0.7;
  int grid = 41;        // points per axis
  double range = 2.0;   // y0, z0 in [-range, range]
  double t_end = 2500.0;
  double step = 0.02;
  bool mirror_class2 = false;  // classify (y0, -z0): the class-2 diagram
};

struct PhaseScanRow {
  double y0;
  double z0;
  double norm;
  phase::Region region;
  phase::Boundary boundary;
  phase::Fate observed;
  bool agree;
};

std::vector<PhaseScanRow> phase_scan(const PhaseScanConfig& config,
                                     Execution exec);

// ---- Closed form vs oracle on the degenerate logit equation ----

struct DegenerateGridConfig {
  std::vector<double> u0s{0.1, 0.5, 1.0};
  std::vector<double> rates{0.5, 0.7, 1.0, 2.0};
  double t_end = 20.0;
  double sample_dt = 0.1;     // comparison times
  double oracle_step = 1e-4;  // RK4 step
};

struct GridErrorResult {
  double max_abs_error = 0.0;
  double max_bound_violation = 0.0;  // closed form minus convergence_bound
  std::size_t points = 0;
};

GridErrorResult degenerate_grid_error(const DegenerateGridConfig& config,
                                      Execution exec);

// ---- Hyperbolic invariant drift over seeded oracle runs ----

struct DriftConfig {
  int runs = 50;
  std::uint64_t seed = 20240913;
  double t_end = 10.0;
  double step = 1e-4;
};

// Worst |(y^2 - n^2 z^2) - (y0^2 - n^2 z0^2)| over all runs and samples.
double max_invariant_drift(const DriftConfig& config, Execution exec);

// ---- Mode-independence fleet ----

struct FleetConfig {
  int runs = 1000;
  std::vector<int> hidden_sizes{2, 4, 8};
  std::uint64_t base_seed = 777;
  long steps = 300;
  double learning_rate = 0.05;
};

struct FleetResult {
  long violations = 0;
  long runs = 0;
  long snapshots = 0;
};

FleetResult lemma_fleet(const FleetConfig& config, Execution exec);

struct MultiClassFleetConfig {
  int runs = 100;
  std::size_t n_classes = 3;
  std::uint64_t base_seed = 424242;
  long steps = 200;
  double learning_rate = 0.05;
};

FleetResult multiclass_fleet(const MultiClassFleetConfig& config,
                             Execution exec);

// A deliberately H2-violating run (one cross-active row); returns the
// violation count, which must be positive.
long negative_control_violations(std::uint64_t seed);

// ---- Starvation bound surface ----

struct SurfaceRow {
  double lambda;
  double delta;
  double bound;
  double bound_relaxed;
  double conf_x2_at_tstar;
  double t_star;
};

// Evaluates both bounds and the integrated trajectory confidence at t* for
// every (lambda, delta) cell; alpha0/beta0/z0 come from the base config.
std::vector<SurfaceRow> starvation_surface(
    const std::vector<double>& lambdas, const std::vector<double>& deltas,
    const starvation::StarvationConfig& base, Execution exec);

}  // namespace neurodyn::sweep
