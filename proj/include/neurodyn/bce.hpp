#pragma once

#include <span>
#include <vector>

#include "neurodyn/ode.hpp"
#include "neurodyn/phase.hpp"

namespace neurodyn::bce {

// One class of the two-class setup: input norm ||x|| and dataset fraction p.
struct ClassSpec {
  double norm;       // ||x|| > 0
  double frequency;  // |D_k| / |D| in [0, 1]
  int label;         // 1 or 2
};

enum class Branch { Degenerate, AboveAsymptote, BelowAsymptote };

// The per-mode pair (y, z) with its conserved quantity c = |y0^2 - n^2 z0^2|
// and hyperbola branch. Branch is Degenerate when c is zero to within
// relative tolerance 1e-12; the theta parametrization blows up as c -> 0,
// so near-degenerate states must route to the closed form.
struct ScalarState {
  double y;
  double z;
  double c;
  Branch branch;

  double logit() const { return y * z; }

  static ScalarState from_init(double y0, double z0, double norm);
};

// Relative tolerance of the c = 0 test in from_init.
inline constexpr double degeneracy_tolerance = 1e-12;

// The (y, z) single-mode flow y' = norm^2 z sigma(-yz), z' = y sigma(-yz).
ode::OdeSystem mode_system(double norm);

// Degenerate-case logit u(t) = (log+Ei)^{-1}(2 rate t + log(u0) + Ei(u0)),
// the closed-form solution of u' = 2 rate u sigma(-u). `rate` is the
// effective rate ||x|| p that rescales the time axis.
double solve_degenerate(double u0, double rate, double t);

// Exact inverse of solve_degenerate: time for the logit to climb from u0 to
// uf, (log(uf/u0) + Ei(uf) - Ei(u0)) / (2 rate).
double time_to_logit(double u0, double uf, double rate);

// Non-degenerate case, solved in the hyperbolic angle:
//   theta' = 2 norm / (1 + e^{c sinh(theta) / (2 norm)}),
// then mapped back through the branch's cosh/sinh parametrization. The time
// axis is pre-scaled by rate_scale = p. Requires c > 0 and a Solves-region
// start (phase::RegionError otherwise).
ScalarState solve_hyperbolic(const ScalarState& state0, double norm,
                             double rate_scale, double t, double step = 1e-4);

// Full sampled run of the same flow, recording (y, z) against physical time.
ode::Trajectory solve_hyperbolic_trajectory(const ScalarState& state0,
                                            double norm, double rate_scale,
                                            double t_end, double step = 1e-4);

// Upper bound u(t) <= 2 log(norm t + e^{u0/2}) on the degenerate solution.
double convergence_bound(double u0, double norm, double t);

struct TimeRatio {
  double exact;   // t2*/t1* including the head-start correction t_v
  double approx;  // (||x1|| / ||x2||) (p / (1-p))
};

// Ratio of times-to-confidence 1-delta for the two classes, both started in
// the degenerate case with logits u0 and -v0_abs. Requires u0 <= v0_abs.
TimeRatio convergence_time_ratio(const ClassSpec& class1,
                                 const ClassSpec& class2, double u0,
                                 double v0_abs, double delta);

// Negative-asymptote start: integrates u' = -2 rate u sigma(-u) from u0 < 0.
// The logit increases toward 0 without ever reaching it.
double solve_top_left(double u0, double rate, double t, double step = 1e-4);
ode::Trajectory solve_top_left_trajectory(double u0, double rate, double t_end,
                                          double step = 1e-4);

// Coupled per-neuron logits (u^i)' = 2 rate u^i sigma(-sum_j u^j), all
// starting positive (every c_i = 0). The trailing trajectory column carries
// the sum, which follows the single-neuron equation.
ode::Trajectory solve_multi_neuron(std::span<const double> u0s, double rate,
                                   double t_end, double step);

// Degenerate-case logit growth rate 2 sqrt(m) norm for a class of m
// orthogonal equal-norm points under full-batch updates. The matching
// solve_degenerate rate parameter is half of this, sqrt(m) norm.
double orthogonal_class_rate(int m, double norm);

// Competition system with one cross-class point initially active:
//   alpha' = z sigma(-z alpha)
//   beta'  = -z sigma(z beta)   while beta > 0, frozen after
//   z'     = alpha sigma(-z alpha) - beta sigma(z beta) [beta > 0]
// Columns: alpha, beta, z, alpha*z.
ode::Trajectory solve_relaxed_h2(double alpha0, double beta0, double z0,
                                 double t_end, double step);

}  // namespace neurodyn::bce
