#include "neurodyn/bce.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "neurodyn/specfn.hpp"

namespace neurodyn::bce {

using specfn::sigmoid;

ScalarState ScalarState::from_init(double y0, double z0, double norm) {
  if (!(norm > 0.0)) throw std::domain_error("ScalarState: norm must be > 0");
  const double a = y0 * y0;
  const double b = norm * norm * z0 * z0;
  const double diff = a - b;
  ScalarState s{y0, z0, std::abs(diff), Branch::Degenerate};
  if (a + b > 0.0 && std::abs(diff) > degeneracy_tolerance * (a + b)) {
    s.branch = diff > 0.0 ? Branch::AboveAsymptote : Branch::BelowAsymptote;
  } else {
    s.c = 0.0;
  }
  return s;
}

ode::OdeSystem mode_system(double norm) {
  if (!(norm > 0.0)) throw std::domain_error("mode_system: norm must be > 0");
  const double n2 = norm * norm;
  return {2,
          [n2](double, std::span<const double> s, std::span<double> d) {
            const double sig = sigmoid(-s[0] * s[1]);
            d[0] = n2 * s[1] * sig;
            d[1] = s[0] * sig;
          },
          "bce single-mode (y, z) flow"};
}

double solve_degenerate(double u0, double rate, double t) {
  if (!(u0 > 0.0)) {
    throw std::domain_error(
        "solve_degenerate: u0 must be > 0 (u0 <= 0 is a fixed point or a "
        "different phase region)");
  }
  if (!(rate > 0.0)) throw std::domain_error("solve_degenerate: rate must be > 0");
  if (!(t >= 0.0)) throw std::domain_error("solve_degenerate: t must be >= 0");
  if (t == 0.0) return u0;
  return specfn::inverse_log_plus_ei(2.0 * rate * t + specfn::log_plus_ei(u0));
}

double time_to_logit(double u0, double uf, double rate) {
  if (!(u0 > 0.0)) throw std::domain_error("time_to_logit: u0 must be > 0");
  if (!(rate > 0.0)) throw std::domain_error("time_to_logit: rate must be > 0");
  if (uf < u0) {
    throw std::domain_error("time_to_logit: uf must be >= u0 (the logit only grows)");
  }
  if (uf == u0) return 0.0;
  return (std::log(uf / u0) + specfn::ei(uf) - specfn::ei(u0)) / (2.0 * rate);
}

namespace {

// Hyperbolic-angle coordinate of a state: theta0 is non-negative from the
// acosh, signed so that u = c sinh(theta)/(2 norm) reproduces the initial
// logit (negative-z0 starts sit at negative theta).
double theta_of(const ScalarState& s, double norm) {
  const double arg = (s.y * s.y + norm * norm * s.z * s.z) / s.c;
  const double theta = std::acosh(std::max(1.0, arg));
  return s.logit() >= 0.0 ? theta : -theta;
}

ScalarState state_of(double theta, double c, Branch branch, double norm) {
  const double root_c = std::sqrt(c);
  const double ch = std::cosh(0.5 * theta);
  const double sh = std::sinh(0.5 * theta);
  if (branch == Branch::AboveAsymptote) {
    return {root_c * ch, root_c / norm * sh, c, branch};
  }
  return {root_c * sh, root_c / norm * ch, c, branch};
}

void check_hyperbolic_args(const ScalarState& state0, double norm,
                           double rate_scale, double t) {
  if (!(norm > 0.0)) throw std::domain_error("solve_hyperbolic: norm must be > 0");
  if (!(rate_scale > 0.0) || rate_scale > 1.0) {
    throw std::domain_error("solve_hyperbolic: rate_scale must be in (0, 1]");
  }
  if (!(t >= 0.0)) throw std::domain_error("solve_hyperbolic: t must be >= 0");
  if (!(state0.c > 0.0)) {
    throw std::domain_error(
        "solve_hyperbolic: c = 0 is the degenerate case, use solve_degenerate");
  }
  const auto region = phase::classify(state0.y, state0.z, norm);
  if (region.kind != phase::Region::Solves) {
    throw phase::RegionError(
        std::string("solve_hyperbolic: initialization is in region '") +
        phase::to_string(region.kind) + "', not Solves");
  }
}

ode::OdeSystem theta_system(double c, double norm) {
  return {1,
          [c, norm](double, std::span<const double> s, std::span<double> d) {
            d[0] = 2.0 * norm * sigmoid(-c * std::sinh(s[0]) / (2.0 * norm));
          },
          "bce hyperbolic angle flow"};
}

}  // namespace

ScalarState solve_hyperbolic(const ScalarState& state0, double norm,
                             double rate_scale, double t, double step) {
  check_hyperbolic_args(state0, norm, rate_scale, t);
  const double theta0 = theta_of(state0, norm);
  if (t == 0.0) return state_of(theta0, state0.c, state0.branch, norm);
  const auto run =
      ode::integrate(theta_system(state0.c, norm), {theta0}, rate_scale * t, step);
  return state_of(run.back()[0], state0.c, state0.branch, norm);
}

ode::Trajectory solve_hyperbolic_trajectory(const ScalarState& state0,
                                            double norm, double rate_scale,
                                            double t_end, double step) {
  check_hyperbolic_args(state0, norm, rate_scale, t_end);
  const double theta0 = theta_of(state0, norm);
  const auto run = ode::integrate(theta_system(state0.c, norm), {theta0},
                                  rate_scale * t_end, step);
  ode::Trajectory out(2, "rk4-theta", step, "bce hyperbolic (y, z)");
  out.reserve(run.size());
  for (std::size_t i = 0; i < run.size(); ++i) {
    const auto s = state_of(run.state(i)[0], state0.c, state0.branch, norm);
    out.append(run.time(i) / rate_scale, std::array<double, 2>{s.y, s.z});
  }
  return out;
}

double convergence_bound(double u0, double norm, double t) {
  if (!(u0 > 0.0)) throw std::domain_error("convergence_bound: u0 must be > 0");
  return 2.0 * std::log(norm * t + std::exp(0.5 * u0));
}

TimeRatio convergence_time_ratio(const ClassSpec& class1,
                                 const ClassSpec& class2, double u0,
                                 double v0_abs, double delta) {
  if (!(class1.norm > 0.0) || !(class2.norm > 0.0)) {
    throw std::domain_error("convergence_time_ratio: norms must be > 0");
  }
  const double p = class1.frequency;
  if (!(p > 0.0) || !(p < 1.0) ||
      std::abs(class1.frequency + class2.frequency - 1.0) > 1e-12) {
    throw std::domain_error(
        "convergence_time_ratio: class frequencies must be in (0,1) and sum to 1");
  }
  if (!(delta > 0.0) || !(delta < 0.5)) {
    throw std::domain_error("convergence_time_ratio: delta must be in (0, 0.5)");
  }
  if (!(u0 > 0.0) || u0 > v0_abs) {
    throw std::domain_error(
        "convergence_time_ratio: requires 0 < u0 <= v0_abs; the u0 > |v0| "
        "regime is rejected");
  }
  const double uf = specfn::sigmoid_inverse(1.0 - delta);
  if (v0_abs >= uf) {
    throw std::domain_error(
        "convergence_time_ratio: target logit must exceed v0_abs");
  }

  // Norm-1 times along the shared degenerate trajectory started at u0.
  const double t_star = time_to_logit(u0, uf, 1.0);
  const double t_v = time_to_logit(u0, v0_abs, 1.0);

  const double t1 = t_star / (class1.norm * p);
  const double t2 = (t_star - t_v) / (class2.norm * (1.0 - p));
  return {t2 / t1, (class1.norm / class2.norm) * (p / (1.0 - p))};
}

namespace {

ode::OdeSystem top_left_system(double rate) {
  return {1,
          [rate](double, std::span<const double> s, std::span<double> d) {
            d[0] = -2.0 * rate * s[0] * sigmoid(-s[0]);
          },
          "bce negative-asymptote logit flow"};
}

}  // namespace

double solve_top_left(double u0, double rate, double t, double step) {
  if (t == 0.0) {
    if (!(u0 < 0.0)) throw std::domain_error("solve_top_left: u0 must be < 0");
    return u0;
  }
  return solve_top_left_trajectory(u0, rate, t, step).back()[0];
}

ode::Trajectory solve_top_left_trajectory(double u0, double rate, double t_end,
                                          double step) {
  if (!(u0 < 0.0)) throw std::domain_error("solve_top_left: u0 must be < 0");
  if (!(rate > 0.0)) throw std::domain_error("solve_top_left: rate must be > 0");
  return ode::integrate(top_left_system(rate), {u0}, t_end, step);
}

ode::Trajectory solve_multi_neuron(std::span<const double> u0s, double rate,
                                   double t_end, double step) {
  if (u0s.empty()) throw std::domain_error("solve_multi_neuron: no neurons");
  if (!(rate > 0.0)) throw std::domain_error("solve_multi_neuron: rate must be > 0");
  for (double u : u0s) {
    if (!(u > 0.0)) {
      throw std::domain_error("solve_multi_neuron: all u0 must be > 0");
    }
  }
  const std::size_t n = u0s.size();
  ode::OdeSystem system{
      n,
      [rate, n](double, std::span<const double> s, std::span<double> d) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += s[i];
        const double sig = sigmoid(-sum);
        for (std::size_t i = 0; i < n; ++i) d[i] = 2.0 * rate * s[i] * sig;
      },
      "bce per-neuron logit flow"};
  const auto run = ode::integrate(system, {u0s.begin(), u0s.end()}, t_end, step);

  ode::Trajectory out(n + 1, "rk4", step, "bce per-neuron logits + sum");
  out.reserve(run.size());
  std::vector<double> row(n + 1);
  for (std::size_t i = 0; i < run.size(); ++i) {
    const auto s = run.state(i);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      row[k] = s[k];
      sum += s[k];
    }
    row[n] = sum;
    out.append(run.time(i), row);
  }
  return out;
}

double orthogonal_class_rate(int m, double norm) {
  if (m < 1) throw std::domain_error("orthogonal_class_rate: m must be >= 1");
  if (!(norm > 0.0)) {
    throw std::domain_error("orthogonal_class_rate: norm must be > 0");
  }
  return 2.0 * std::sqrt(static_cast<double>(m)) * norm;
}

ode::Trajectory solve_relaxed_h2(double alpha0, double beta0, double z0,
                                 double t_end, double step) {
  if (!(alpha0 > 0.0) || beta0 < 0.0 || !(z0 > 0.0)) {
    throw std::domain_error(
        "solve_relaxed_h2: requires alpha0 > 0, beta0 >= 0, z0 > 0");
  }
  ode::OdeSystem system{
      3,
      [](double, std::span<const double> s, std::span<double> d) {
        const double a = s[0], b = s[1], z = s[2];
        const double ga = sigmoid(-z * a);
        // The cross-class direction is ReLU-inactive once beta reaches 0;
        // learning along it stops.
        const double gb = b > 0.0 ? sigmoid(z * b) : 0.0;
        d[0] = z * ga;
        d[1] = -z * gb;
        d[2] = a * ga - b * gb;
      },
      "relaxed-H2 competition flow"};
  const auto run = ode::integrate(system, {alpha0, beta0, z0}, t_end, step);

  ode::Trajectory out(4, "rk4", step, "relaxed-H2 (alpha, beta, z, alpha z)");
  out.reserve(run.size());
  for (std::size_t i = 0; i < run.size(); ++i) {
    const auto s = run.state(i);
    out.append(run.time(i),
               std::array<double, 4>{s[0], s[1], s[2], s[0] * s[2]});
  }
  return out;
}

}  // namespace neurodyn::bce
