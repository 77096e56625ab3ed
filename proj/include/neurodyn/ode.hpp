#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace neurodyn::ode {

using State = std::vector<double>;

// Writes d(state)/dt into `deriv`; both spans have the system dimension.
using Rhs = std::function<void(double t, std::span<const double> state,
                               std::span<double> deriv)>;

struct OdeSystem {
  std::size_t dimension = 0;
  Rhs rhs;
  std::string description;
};

// A state component became NaN or infinite during integration.
struct NonFiniteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Time-stamped samples of a solver run. Storage is flat row-major so long
// runs do not allocate per step.
class Trajectory {
 public:
  Trajectory(std::size_t dimension, std::string solver, double step,
             std::string label = {})
      : dim_(dimension), solver_(std::move(solver)), step_(step),
        label_(std::move(label)) {}

  void append(double t, std::span<const double> state);
  void reserve(std::size_t n);

  std::size_t size() const { return times_.size(); }
  std::size_t dimension() const { return dim_; }
  double time(std::size_t i) const { return times_[i]; }
  std::span<const double> state(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<const double> back() const { return state(size() - 1); }
  const std::vector<double>& times() const { return times_; }

  const std::string& solver() const { return solver_; }
  double step() const { return step_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

 private:
  std::size_t dim_;
  std::vector<double> times_;
  std::vector<double> data_;  // size() x dim_
  std::string solver_;
  double step_;
  std::string label_;
};

namespace detail {

// One classical RK4 step of size h on a caller-managed buffer. F is any
// callable with the Rhs signature; scratch buffers must hold dim doubles.
template <class F>
void rk4_step(F&& rhs, double t, double h, std::span<double> y,
              std::span<double> k1, std::span<double> k2, std::span<double> k3,
              std::span<double> k4, std::span<double> tmp) {
  const std::size_t n = y.size();
  rhs(t, y, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  rhs(t + 0.5 * h, tmp, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  rhs(t + 0.5 * h, tmp, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
  rhs(t + h, tmp, k4);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
}

}  // namespace detail

// Fixed-step classical RK4 from t = 0 to exactly t_end (the last step is
// shortened). Every accepted step is recorded, the first entry being the
// initial condition. Throws NonFiniteError if the state leaves R^n.
Trajectory integrate(const OdeSystem& system, const State& initial,
                     double t_end, double step);

struct RefineResult {
  Trajectory trajectory;     // the step/2 run
  double max_discrepancy;    // max pointwise |full - half| over shared times
};

// Step-halving error estimate: integrates at `step` and `step / 2` and
// reports the worst pointwise discrepancy on the shared time grid.
RefineResult richardson_refine(const OdeSystem& system, const State& initial,
                               double t_end, double step);

}  // namespace neurodyn::ode
