#pragma once

#include "neurodyn/ode.hpp"

namespace neurodyn::deep {

// N-layer aligned initialization: depth_n weight matrices, input norm, and
// the initial logit u0 = norm * z0^N.
struct DeepConfig {
  int depth_n;  // >= 2
  double norm;  // > 0
  double u0;    // > 0
};

// Initial logit norm * z0^depth_n under the aligned start where every layer
// scalar equals z0.
double aligned_initial_logit(double z0, double norm, int depth_n);

// Integrates the depth-N logit equation
//   u' = N norm^{2/N} u^{2 - 2/N} / (1 + e^u)
// by fixed-step RK4 from u0. At N = 2 this is exactly the single-layer flow.
ode::Trajectory solve_deep_logit(const DeepConfig& config, double t_end,
                                 double step);

}  // namespace neurodyn::deep
