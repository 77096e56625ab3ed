#pragma once

#include <span>
#include <vector>

#include "neurodyn/bce.hpp"
#include "neurodyn/ode.hpp"

namespace neurodyn::hinge {

// Pre-margin hinge state. Once the output reaches the margin the weights are
// constant, so margin_reached marks a hard stop.
struct HingeState {
  double y;
  double z;
  double c;
  bce::Branch branch;
  bool margin_reached;
};

// The ungated pre-margin flow y' = norm^2 z, z' = y; same hyperbolic
// invariant as the cross-entropy flow, only the sigmoid factor is missing.
ode::OdeSystem mode_system(double norm);

// Closed-form output, clipped at the margin:
//   c  = 0: min(1, u0 e^{2 rate_scale norm t})
//   c != 0: min(1, c/(2 norm) sinh(theta0 + 2 rate_scale norm t))
// with theta0 = sign(y0 z0) acosh((y0^2 + norm^2 z0^2)/c). Requires a
// Solves-region start.
double solve_hinge(double y0, double z0, double norm, double rate_scale,
                   double t);

// Exact margin event time; 0 if the initialization already solves the task.
double time_to_margin(double y0, double z0, double norm, double rate_scale);

// Pre-margin (y, z) pair at time t, frozen at the margin event after it.
HingeState state_at(double y0, double z0, double norm, double rate_scale,
                    double t);

struct LossComparisonRow {
  double delta;
  double t_bce;
  double t_hinge;
};

// Times to reach the logit target sigmoid^{-1}(1-delta) under both losses,
// starting from the same degenerate logit u0. The hinge column uses the
// unclipped exponential by default (the clipped output saturates at 1 and
// can never reach small-delta confidences); clipped mode reports +inf for
// targets above the margin.
std::vector<LossComparisonRow> compare_losses(double u0, double norm, double p,
                                              std::span<const double> deltas,
                                              bool clipped = false);

// Full-batch aggregation of one class: X = sum of the points, the projection
// coefficients X.x_i / ||X||^2 and the fixed residuals w0_perp . x_i.
struct BatchClassSummary {
  double sum_vector_norm;
  std::vector<double> projector_coeffs;
  std::vector<double> residual_inner;
};

BatchClassSummary summarize_batch(
    const std::vector<std::vector<double>>& class_points,
    std::span<const double> w0);

// Full-batch hinge output on an arbitrary query at time t:
//   u_t (X . query)/||X||^2 + z_t (w0_perp . query),
// where (y_t, z_t) follow the scalar dynamics with norm ||X|| started at
// y0 = w0 . X, clipped at the margin event.
double batch_classify(const std::vector<std::vector<double>>& class_points,
                      std::span<const double> w0, double z0, double t,
                      std::span<const double> query);

}  // namespace neurodyn::hinge
