#include "neurodyn/specfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace neurodyn::specfn {

namespace {

// Series / asymptotic switchover. Both branches agree to better than 1e-13
// in a neighbourhood of this point (all series terms are positive, so there
// is no cancellation; the asymptotic truncation error at x = 40 is ~1e-16
// relative).
constexpr double ei_switchover = 40.0;

double ei_series(double x) {
  double sum = 0.0;
  double pow_over_fact = 1.0;  // x^k / k!
  for (int k = 1; k <= 500; ++k) {
    pow_over_fact *= x / k;
    const double term = pow_over_fact / k;
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return euler_gamma + std::log(x) + sum;
}

double ei_asymptotic(double x) {
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k <= 300; ++k) {
    const double next = term * k / x;
    if (next >= term) break;  // smallest term reached, stop before divergence
    term = next;
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return std::exp(x) / x * sum;
}

}  // namespace

double ei(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("ei: argument must be > 0, got " + std::to_string(x));
  }
  return x <= ei_switchover ? ei_series(x) : ei_asymptotic(x);
}

double log_plus_ei(double u) {
  if (!(u > 0.0)) {
    throw std::domain_error("log_plus_ei: argument must be > 0, got " +
                            std::to_string(u));
  }
  return std::log(u) + ei(u);
}

double inverse_log_plus_ei(double v) {
  // Near 0, Ei(u) ~ gamma + log(u), so log_plus_ei(u) ~ 2 log(u) + gamma:
  // seed the lower bracket from that asymptote and expand geometrically
  // until the root is enclosed.
  const double f_at_one = ei(1.0);  // log(1) + Ei(1)
  double lo, hi;
  if (v <= f_at_one) {
    hi = 1.0;
    lo = std::clamp(0.5 * std::exp(0.5 * (v - euler_gamma)), 1e-300, 1.0);
    while (log_plus_ei(lo) > v) {
      lo *= 0.5;
      if (lo < 1e-306) {
        throw ConvergenceError("inverse_log_plus_ei: lower bracket underflow");
      }
    }
  } else {
    lo = 1.0;
    hi = 2.0;
    while (log_plus_ei(hi) < v) {
      hi *= 2.0;
      if (hi > 1e4) {
        throw ConvergenceError("inverse_log_plus_ei: upper bracket blowup");
      }
    }
  }

  const double tol = 1e-12 * std::max(1.0, std::abs(v));
  double u = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = log_plus_ei(u) - v;
    if (std::abs(f) <= tol) return u;
    if (f > 0.0) {
      hi = u;
    } else {
      lo = u;
    }
    // Newton step on f(u) = log(u) + Ei(u) - v, f'(u) = (1 + e^u)/u,
    // clamped to the bracket with bisection as fallback.
    double next = u - f * u / (1.0 + std::exp(u));
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    if (next == u) return u;  // bracket exhausted at machine precision
    u = next;
  }
  throw ConvergenceError("inverse_log_plus_ei: no convergence after 200 steps");
}

double sigmoid(double u) {
  if (u >= 0.0) {
    return 1.0 / (1.0 + std::exp(-u));
  }
  const double e = std::exp(u);
  return e / (1.0 + e);
}

double sigmoid_inverse(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::domain_error("sigmoid_inverse: argument must be in (0,1), got " +
                            std::to_string(p));
  }
  return std::log(p / (1.0 - p));
}

}  // namespace neurodyn::specfn
