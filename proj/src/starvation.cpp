#include "neurodyn/starvation.hpp"

#include <array>
#include <cmath>
#include <string>

#include "neurodyn/specfn.hpp"

namespace neurodyn::starvation {

using specfn::sigmoid;

double StarvationState::conf_both() const { return sigmoid(z * (alpha + beta)); }
double StarvationState::conf_x1() const { return sigmoid(z * alpha); }
double StarvationState::conf_x2() const { return sigmoid(z * beta); }

double starvation_bound(double lambda, double delta) {
  if (!(lambda > 0.0) || lambda > 1.0) {
    throw std::domain_error("starvation_bound: lambda must be in (0, 1]");
  }
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::domain_error("starvation_bound: delta must be in (0, 1)");
  }
  return sigmoid(lambda * std::log((1.0 - delta) / delta));
}

double starvation_bound_relaxed(double lambda, double delta, double z_star,
                                double alpha0, double beta0) {
  if (!(lambda > 0.0) || lambda > 1.0) {
    throw std::domain_error("starvation_bound_relaxed: lambda must be in (0, 1]");
  }
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::domain_error("starvation_bound_relaxed: delta must be in (0, 1)");
  }
  if (!(z_star > 0.0)) {
    throw std::domain_error("starvation_bound_relaxed: z_star must be > 0");
  }
  return sigmoid(lambda * std::log((1.0 - delta) / delta) +
                 z_star * (beta0 - lambda * alpha0));
}

namespace {

void validate(const StarvationConfig& c) {
  if (!(c.lambda > 0.0) || c.lambda > 1.0) {
    throw std::domain_error("starvation: lambda must be in (0, 1]");
  }
  if (!(c.delta > 0.0) || !(c.delta < 0.5)) {
    throw std::domain_error("starvation: delta must be in (0, 0.5)");
  }
  if (!(c.z0 > 0.0)) throw std::domain_error("starvation: z0 must be > 0");
}

ode::OdeSystem flow(double lambda) {
  return {3,
          [lambda](double, std::span<const double> s, std::span<double> d) {
            const double a = s[0], b = s[1], z = s[2];
            const double s_both = sigmoid(-z * (a + b));
            const double s_x1 = sigmoid(-z * a);
            d[0] = lambda * z * s_both + (1.0 - lambda) * z * s_x1;
            d[1] = lambda * z * s_both;
            d[2] = lambda * (a + b) * s_both + (1.0 - lambda) * a * s_x1;
          },
          "feature-frequency flow"};
}

}  // namespace

ode::Trajectory integrate_starvation(const StarvationConfig& config,
                                     double t_end, double step) {
  validate(config);
  return ode::integrate(flow(config.lambda),
                        {config.alpha0, config.beta0, config.z0}, t_end, step);
}

TstarResult integrate_to_tstar(const StarvationConfig& config, double step) {
  validate(config);
  const double target =
      std::log((1.0 - config.delta) / config.delta);  // z alpha at t*
  if (config.z0 * config.alpha0 >= target) {
    throw std::domain_error(
        "integrate_to_tstar: the initialization already meets the confidence "
        "target");
  }

  const auto system = flow(config.lambda);
  std::array<double, 3> s{config.alpha0, config.beta0, config.z0};
  std::array<double, 3> k1{}, k2{}, k3{}, k4{}, tmp{};
  auto za = [](const std::array<double, 3>& v) { return v[2] * v[0]; };

  double t = 0.0;
  std::array<double, 3> prev = s;
  bool bracketed = false;
  for (std::size_t i = 1; t < config.t_max; ++i) {
    double t_next = static_cast<double>(i) * step;
    if (t_next >= config.t_max) t_next = config.t_max;
    prev = s;
    ode::detail::rk4_step(system.rhs, t, t_next - t, std::span<double>(s), k1,
                          k2, k3, k4, tmp);
    if (za(s) >= target) {
      bracketed = true;
      break;
    }
    t = t_next;
  }
  if (!bracketed) {
    throw HorizonError("integrate_to_tstar: target not reached by t_max = " +
                       std::to_string(config.t_max));
  }

  // Bisect on the sub-step size within the bracketing interval. z alpha is
  // increasing, so a single RK4 step of size h from `prev` is monotone in h.
  double lo = 0.0, hi = step;
  std::array<double, 3> at_hi = s;
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    std::array<double, 3> trial = prev;
    ode::detail::rk4_step(system.rhs, t, mid, std::span<double>(trial), k1, k2,
                          k3, k4, tmp);
    if (za(trial) >= target) {
      hi = mid;
      at_hi = trial;
    } else {
      lo = mid;
    }
  }
  const double t_star = t + hi;
  return {t_star, {t_star, at_hi[0], at_hi[1], at_hi[2]}};
}

}  // namespace neurodyn::starvation
