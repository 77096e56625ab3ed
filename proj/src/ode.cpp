#include "neurodyn/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace neurodyn::ode {

void Trajectory::append(double t, std::span<const double> state) {
  times_.push_back(t);
  data_.insert(data_.end(), state.begin(), state.end());
}

void Trajectory::reserve(std::size_t n) {
  times_.reserve(n);
  data_.reserve(n * dim_);
}

namespace {

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

}  // namespace

Trajectory integrate(const OdeSystem& system, const State& initial,
                     double t_end, double step) {
  if (system.dimension == 0 || !system.rhs) {
    throw std::invalid_argument("integrate: system has no dimension or rhs");
  }
  if (initial.size() != system.dimension) {
    throw std::invalid_argument("integrate: initial state has dimension " +
                                std::to_string(initial.size()) + ", expected " +
                                std::to_string(system.dimension));
  }
  if (!(t_end > 0.0)) throw std::invalid_argument("integrate: t_end must be > 0");
  if (!(step > 0.0)) throw std::invalid_argument("integrate: step must be > 0");
  if (!all_finite(initial)) {
    throw NonFiniteError("integrate: non-finite initial state (" +
                         system.description + ")");
  }

  const std::size_t n = system.dimension;
  State y = initial;
  State k1(n), k2(n), k3(n), k4(n), tmp(n);

  Trajectory out(n, "rk4", step, system.description);
  out.reserve(static_cast<std::size_t>(t_end / step) + 2);
  out.append(0.0, y);

  double t = 0.0;
  for (std::size_t i = 1; t < t_end; ++i) {
    // Grid times are i*step to avoid accumulation drift; the final step is
    // shortened so the last sample lands on t_end exactly.
    double t_next = static_cast<double>(i) * step;
    if (t_next >= t_end) t_next = t_end;
    const double h = t_next - t;
    if (!(h > 0.0)) break;
    detail::rk4_step(system.rhs, t, h, std::span<double>(y), k1, k2, k3, k4,
                     tmp);
    if (!all_finite(y)) {
      throw NonFiniteError("integrate: state became non-finite at t = " +
                           std::to_string(t_next) + " (" + system.description +
                           ")");
    }
    out.append(t_next, y);
    t = t_next;
  }
  return out;
}

RefineResult richardson_refine(const OdeSystem& system, const State& initial,
                               double t_end, double step) {
  Trajectory full = integrate(system, initial, t_end, step);
  Trajectory half = integrate(system, initial, t_end, 0.5 * step);

  // Full-grid sample i lives at half-grid sample 2i, except for the final
  // shortened steps where both land on t_end.
  double worst = 0.0;
  const std::size_t dim = system.dimension;
  for (std::size_t i = 0; i < full.size(); ++i) {
    std::size_t j = 2 * i;
    if (j >= half.size() || full.time(i) != half.time(j)) {
      if (full.time(i) != t_end) continue;
      j = half.size() - 1;
    }
    const auto a = full.state(i);
    const auto b = half.state(j);
    for (std::size_t k = 0; k < dim; ++k) {
      worst = std::max(worst, std::abs(a[k] - b[k]));
    }
  }
  return {std::move(half), worst};
}

}  // namespace neurodyn::ode
