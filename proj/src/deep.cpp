#include "neurodyn/deep.hpp"

#include <cmath>

#include "neurodyn/specfn.hpp"

namespace neurodyn::deep {

double aligned_initial_logit(double z0, double norm, int depth_n) {
  if (!(z0 > 0.0)) throw std::domain_error("aligned_initial_logit: z0 must be > 0");
  if (!(norm > 0.0)) throw std::domain_error("aligned_initial_logit: norm must be > 0");
  if (depth_n < 2) throw std::domain_error("aligned_initial_logit: depth_n must be >= 2");
  return norm * std::pow(z0, static_cast<double>(depth_n));
}

ode::Trajectory solve_deep_logit(const DeepConfig& config, double t_end,
                                 double step) {
  if (config.depth_n < 2) {
    throw std::domain_error("solve_deep_logit: depth_n must be >= 2");
  }
  if (!(config.norm > 0.0)) {
    throw std::domain_error("solve_deep_logit: norm must be > 0");
  }
  if (!(config.u0 > 0.0)) {
    throw std::domain_error("solve_deep_logit: u0 must be > 0 (u = 0 is a fixed point)");
  }

  const double n = static_cast<double>(config.depth_n);
  const double norm_pow = std::pow(config.norm, 2.0 / n);
  const double exponent = 2.0 - 2.0 / n;
  ode::OdeSystem system{
      1,
      [n, norm_pow, exponent](double, std::span<const double> s,
                              std::span<double> d) {
        const double u = s[0];
        // u^{2-2/N} as exp((2-2/N) log u), guarded against log(0) underflow.
        const double u_pow =
            u < 1e-300 ? 0.0 : std::exp(exponent * std::log(u));
        d[0] = n * norm_pow * u_pow * specfn::sigmoid(-u);
      },
      "deep logit flow"};
  return ode::integrate(system, {config.u0}, t_end, step);
}

}  // namespace neurodyn::deep
