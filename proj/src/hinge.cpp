#include "neurodyn/hinge.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "neurodyn/specfn.hpp"

namespace neurodyn::hinge {

ode::OdeSystem mode_system(double norm) {
  if (!(norm > 0.0)) throw std::domain_error("mode_system: norm must be > 0");
  const double n2 = norm * norm;
  return {2,
          [n2](double, std::span<const double> s, std::span<double> d) {
            d[0] = n2 * s[1];
            d[1] = s[0];
          },
          "hinge single-mode (y, z) flow"};
}

namespace {

void check_args(double y0, double z0, double norm, double rate_scale) {
  if (!(norm > 0.0)) throw std::domain_error("hinge: norm must be > 0");
  if (!(rate_scale > 0.0) || rate_scale > 1.0) {
    throw std::domain_error("hinge: rate_scale must be in (0, 1]");
  }
  const auto region = phase::classify(y0, z0, norm);
  if (region.kind != phase::Region::Solves) {
    throw phase::RegionError(
        std::string("hinge: initialization is in region '") +
        phase::to_string(region.kind) + "', not Solves");
  }
}

double theta0_of(const bce::ScalarState& s, double norm) {
  const double arg = (s.y * s.y + norm * norm * s.z * s.z) / s.c;
  const double theta = std::acosh(std::max(1.0, arg));
  return s.logit() >= 0.0 ? theta : -theta;
}

}  // namespace

double time_to_margin(double y0, double z0, double norm, double rate_scale) {
  check_args(y0, z0, norm, rate_scale);
  const auto s0 = bce::ScalarState::from_init(y0, z0, norm);
  const double u0 = s0.logit();
  if (u0 >= 1.0) return 0.0;
  if (s0.branch == bce::Branch::Degenerate) {
    return std::log(1.0 / u0) / (2.0 * rate_scale * norm);
  }
  const double theta_margin = std::asinh(2.0 * norm / s0.c);
  return (theta_margin - theta0_of(s0, norm)) / (2.0 * rate_scale * norm);
}

double solve_hinge(double y0, double z0, double norm, double rate_scale,
                   double t) {
  check_args(y0, z0, norm, rate_scale);
  if (!(t >= 0.0)) throw std::domain_error("solve_hinge: t must be >= 0");
  const auto s0 = bce::ScalarState::from_init(y0, z0, norm);
  const double u0 = s0.logit();
  if (u0 >= 1.0) return 1.0;  // the weights never move, the task is solved
  double u;
  if (s0.branch == bce::Branch::Degenerate) {
    u = u0 * std::exp(2.0 * rate_scale * norm * t);
  } else {
    u = s0.c / (2.0 * norm) *
        std::sinh(theta0_of(s0, norm) + 2.0 * rate_scale * norm * t);
  }
  return std::min(1.0, u);
}

HingeState state_at(double y0, double z0, double norm, double rate_scale,
                    double t) {
  check_args(y0, z0, norm, rate_scale);
  if (!(t >= 0.0)) throw std::domain_error("state_at: t must be >= 0");
  const auto s0 = bce::ScalarState::from_init(y0, z0, norm);
  if (s0.logit() >= 1.0) return {y0, z0, s0.c, s0.branch, true};

  // The margin event is exact, so post-margin constancy is bit-exact.
  const double t_margin = time_to_margin(y0, z0, norm, rate_scale);
  const bool reached = t >= t_margin;
  const double te = reached ? t_margin : t;

  if (s0.branch == bce::Branch::Degenerate) {
    const double growth = std::exp(rate_scale * norm * te);
    return {y0 * growth, z0 * growth, s0.c, s0.branch, reached};
  }
  const double theta = theta0_of(s0, norm) + 2.0 * rate_scale * norm * te;
  const double root_c = std::sqrt(s0.c);
  const double ch = std::cosh(0.5 * theta);
  const double sh = std::sinh(0.5 * theta);
  if (s0.branch == bce::Branch::AboveAsymptote) {
    return {root_c * ch, root_c / norm * sh, s0.c, s0.branch, reached};
  }
  return {root_c * sh, root_c / norm * ch, s0.c, s0.branch, reached};
}

std::vector<LossComparisonRow> compare_losses(double u0, double norm, double p,
                                              std::span<const double> deltas,
                                              bool clipped) {
  if (!(u0 > 0.0)) throw std::domain_error("compare_losses: u0 must be > 0");
  if (!(norm > 0.0)) throw std::domain_error("compare_losses: norm must be > 0");
  if (!(p > 0.0) || p > 1.0) {
    throw std::domain_error("compare_losses: p must be in (0, 1]");
  }
  std::vector<LossComparisonRow> rows;
  rows.reserve(deltas.size());
  for (double delta : deltas) {
    if (!(delta > 0.0) || !(delta < 0.5)) {
      throw std::domain_error("compare_losses: delta must be in (0, 0.5)");
    }
    const double target = specfn::sigmoid_inverse(1.0 - delta);
    if (target <= u0) {
      throw std::domain_error(
          "compare_losses: target logit must exceed u0 (delta too large)");
    }
    const double t_bce = bce::time_to_logit(u0, target, norm * p);
    double t_hinge;
    if (clipped && target > 1.0) {
      t_hinge = std::numeric_limits<double>::infinity();
    } else {
      t_hinge = std::log(target / u0) / (2.0 * p * norm);
    }
    rows.push_back({delta, t_bce, t_hinge});
  }
  return rows;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

BatchClassSummary summarize_batch(
    const std::vector<std::vector<double>>& class_points,
    std::span<const double> w0) {
  if (class_points.empty()) {
    throw std::domain_error("summarize_batch: class has no points");
  }
  const std::size_t d = class_points.front().size();
  std::vector<double> sum(d, 0.0);
  for (const auto& x : class_points) {
    if (x.size() != d) {
      throw std::invalid_argument("summarize_batch: inconsistent dimensions");
    }
    for (std::size_t i = 0; i < d; ++i) sum[i] += x[i];
  }
  const double norm2 = dot(sum, sum);
  if (!(norm2 > 1e-24)) {
    throw std::domain_error("summarize_batch: the points sum to zero");
  }
  if (w0.size() != d) {
    throw std::invalid_argument("summarize_batch: w0 has wrong dimension");
  }
  const double w0_along = dot(w0, sum) / norm2;

  BatchClassSummary out;
  out.sum_vector_norm = std::sqrt(norm2);
  out.projector_coeffs.reserve(class_points.size());
  out.residual_inner.reserve(class_points.size());
  for (const auto& x : class_points) {
    const double proj = dot(sum, x) / norm2;
    out.projector_coeffs.push_back(proj);
    out.residual_inner.push_back(dot(w0, x) - w0_along * dot(sum, x));
  }
  return out;
}

double batch_classify(const std::vector<std::vector<double>>& class_points,
                      std::span<const double> w0, double z0, double t,
                      std::span<const double> query) {
  if (class_points.empty()) {
    throw std::domain_error("batch_classify: class has no points");
  }
  const std::size_t d = class_points.front().size();
  if (w0.size() != d || query.size() != d) {
    throw std::invalid_argument("batch_classify: dimension mismatch");
  }
  std::vector<double> sum(d, 0.0);
  for (const auto& x : class_points) {
    for (std::size_t i = 0; i < d; ++i) sum[i] += x[i];
  }
  const double norm2 = dot(sum, sum);
  if (!(norm2 > 1e-24)) {
    throw std::domain_error("batch_classify: the points sum to zero");
  }
  const double norm = std::sqrt(norm2);
  const double y0 = dot(w0, sum);

  const auto s = state_at(y0, z0, norm, 1.0, t);
  const double w0_perp_q = dot(w0, query) - y0 / norm2 * dot(sum, query);
  return s.y * s.z * dot(sum, query) / norm2 + s.z * w0_perp_q;
}

}  // namespace neurodyn::hinge
