#pragma once

#include <stdexcept>

#include "neurodyn/ode.hpp"

namespace neurodyn::starvation {

// Two-feature class: feature x1 is always present, x2 appears with
// frequency lambda. Features are unit-norm; alpha and beta are the weight
// components along x1 and x2, z the output weight.
struct StarvationConfig {
  double lambda;       // in (0, 1]
  double delta;        // confidence requirement, in (0, 0.5)
  double alpha0;
  double beta0;
  double z0;           // > 0
  double t_max = 1e5;  // horizon for the stopping-time search
};

struct StarvationState {
  double t;
  double alpha;
  double beta;
  double z;

  double conf_both() const;  // sigma(z (alpha + beta))
  double conf_x1() const;    // sigma(z alpha)
  double conf_x2() const;    // sigma(z beta)
};

// The stopping-time search did not reach its target within t_max.
struct HorizonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Confidence ceiling on the rare feature: sigma(lambda log((1-delta)/delta)).
double starvation_bound(double lambda, double delta);

// Relaxed ceiling sigma(lambda log((1-delta)/delta) + z_star (beta0 - lambda
// alpha0)) covering initializations with beta0 > lambda alpha0.
double starvation_bound_relaxed(double lambda, double delta, double z_star,
                                double alpha0, double beta0);

// Feature-frequency flow:
//   alpha' = lambda z s(-z(a+b)) + (1-lambda) z s(-z a)
//   beta'  = lambda z s(-z(a+b))
//   z'     = lambda (a+b) s(-z(a+b)) + (1-lambda) a s(-z a)
// Columns: alpha, beta, z.
ode::Trajectory integrate_starvation(const StarvationConfig& config,
                                     double t_end, double step);

struct TstarResult {
  double t_star;
  StarvationState state;
};

// Integrates until z alpha = log((1-delta)/delta), the instant every class-1
// sample is classified with confidence 1-delta; the crossing is located by
// bisection on the bracketing step to time tolerance 1e-8.
TstarResult integrate_to_tstar(const StarvationConfig& config,
                               double step = 1e-2);

}  // namespace neurodyn::starvation
