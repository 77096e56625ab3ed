#pragma once

#include <stdexcept>

namespace neurodyn::specfn {

// Euler-Mascheroni constant to 20 digits.
inline constexpr double euler_gamma = 0.57721566490153286061;

// Thrown when an iterative scheme fails to converge within its step budget.
// This signals a numerics bug, not a domain problem with the inputs.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exponential integral Ei(x) = -PV \int_{-x}^{inf} e^{-u}/u du, for x > 0.
//
// Convergent series  Ei(x) = gamma + ln(x) + sum_{k>=1} x^k / (k k!)
// below the switchover, asymptotic expansion e^x/x sum_{k>=0} k!/x^k above.
// Relative error <= 1e-10 on (0, 50]; the asymptotic branch keeps large
// arguments (time-to-confidence queries at small delta) stable.
double ei(double x);

// log(u) + Ei(u), u > 0. Strictly increasing bijection (0,inf) -> R.
double log_plus_ei(double u);

// Inverse of log_plus_ei: the unique u > 0 with log(u) + Ei(u) = v.
// Bracketing plus safeguarded Newton; |log_plus_ei(u) - v| <= 1e-10 max(1,|v|).
double inverse_log_plus_ei(double v);

// Logistic sigmoid 1 / (1 + e^-u), evaluated without overflow.
double sigmoid(double u);

// Logit function log(p / (1-p)), p in (0,1).
double sigmoid_inverse(double p);

}  // namespace neurodyn::specfn
