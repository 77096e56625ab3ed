#include "neurodyn/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "neurodyn/rng.hpp"
#include "neurodyn/specfn.hpp"

namespace neurodyn::sim {

using specfn::sigmoid;

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

std::vector<double> random_unit(rng::SplitMix64& gen, std::size_t d) {
  std::vector<double> v(d);
  for (;;) {
    for (auto& x : v) x = gen.normal();
    const double n = norm(v);
    if (n > 1e-6) {
      for (auto& x : v) x /= n;
      return v;
    }
  }
}

// A unit vector at exactly `angle` radians from the unit axis.
std::vector<double> tilted_unit(rng::SplitMix64& gen,
                                std::span<const double> axis, double angle) {
  const std::size_t d = axis.size();
  if (angle == 0.0) return {axis.begin(), axis.end()};
  std::vector<double> g(d);
  for (;;) {
    for (auto& x : g) x = gen.normal();
    const double along = dot(g, axis);
    for (std::size_t i = 0; i < d; ++i) g[i] -= along * axis[i];
    const double n = norm(g);
    if (n > 1e-6) {
      const double c = std::cos(angle), s = std::sin(angle);
      for (std::size_t i = 0; i < d; ++i) g[i] = c * axis[i] + s * g[i] / n;
      return g;
    }
  }
}

}  // namespace

void verify_separability(const SeparableDataset& ds) {
  for (std::size_t i = 0; i < ds.class1.size(); ++i) {
    for (std::size_t j = i + 1; j < ds.class1.size(); ++j) {
      if (!(dot(ds.class1[i], ds.class1[j]) > 0.0)) {
        throw DatasetError("separability: class-1 pair with non-positive product");
      }
    }
  }
  for (std::size_t i = 0; i < ds.class2.size(); ++i) {
    for (std::size_t j = i + 1; j < ds.class2.size(); ++j) {
      if (!(dot(ds.class2[i], ds.class2[j]) > 0.0)) {
        throw DatasetError("separability: class-2 pair with non-positive product");
      }
    }
  }
  for (const auto& a : ds.class1) {
    for (const auto& b : ds.class2) {
      if (dot(a, b) > 0.0) {
        throw DatasetError("separability: positive cross-class product");
      }
    }
  }
}

SeparableDataset make_dataset(std::uint64_t seed, std::size_t d,
                              std::size_t n_per_class,
                              double cone_half_angle_deg, double norm_lo,
                              double norm_hi) {
  if (d < 2) throw std::domain_error("make_dataset: d must be >= 2");
  if (n_per_class == 0) throw std::domain_error("make_dataset: empty classes");
  if (!(cone_half_angle_deg >= 0.0) || cone_half_angle_deg > 44.0) {
    throw std::domain_error(
        "make_dataset: cone half-angle must be <= 44 degrees so within-class "
        "products stay positive");
  }
  if (!(norm_lo > 0.0) || norm_hi < norm_lo) {
    throw std::domain_error("make_dataset: need 0 < norm_lo <= norm_hi");
  }

  rng::SplitMix64 gen(seed);
  const auto axis = random_unit(gen, d);
  const double max_angle = cone_half_angle_deg * std::numbers::pi / 180.0;

  SeparableDataset ds;
  ds.dim = d;
  auto sample = [&](bool negate) {
    auto v = tilted_unit(gen, axis, max_angle * gen.uniform());
    const double scale = gen.uniform(norm_lo, norm_hi) * (negate ? -1.0 : 1.0);
    for (auto& x : v) x *= scale;
    return v;
  };
  for (std::size_t i = 0; i < n_per_class; ++i) ds.class1.push_back(sample(false));
  for (std::size_t i = 0; i < n_per_class; ++i) ds.class2.push_back(sample(true));

  verify_separability(ds);
  return ds;
}

double NetworkParams::row_dot(std::size_t i, std::span<const double> x) const {
  return dot(std::span<const double>{w.data() + i * d, d}, x);
}

double NetworkParams::logit(std::span<const double> x) const {
  double u = 0.0;
  for (std::size_t i = 0; i < h; ++i) {
    const double a = row_dot(i, x);
    if (a > 0.0) u += z[i] * a;
  }
  return u;
}

NetworkParams make_h23_params(const SeparableDataset& ds, std::size_t h,
                              std::uint64_t seed) {
  if (h < 2) throw std::domain_error("make_h23_params: h must be >= 2");
  rng::SplitMix64 gen(seed);

  // Dual-cone centers: normalized class means.
  std::vector<double> m1(ds.dim, 0.0), m2(ds.dim, 0.0);
  for (const auto& x : ds.class1) {
    for (std::size_t i = 0; i < ds.dim; ++i) m1[i] += x[i];
  }
  for (const auto& x : ds.class2) {
    for (std::size_t i = 0; i < ds.dim; ++i) m2[i] += x[i];
  }
  const double n1 = norm(m1), n2 = norm(m2);
  for (std::size_t i = 0; i < ds.dim; ++i) {
    m1[i] /= n1;
    m2[i] /= n2;
  }

  NetworkParams p;
  p.h = h;
  p.d = ds.dim;
  p.w.assign(h * ds.dim, 0.0);
  p.z.assign(h, 0.0);
  p.cell.assign(h, 1);
  // Both cells non-empty, otherwise a whole class has no active unit.
  const std::size_t n_cell1 = 1 + gen.bounded(h - 1);
  for (std::size_t i = 0; i < h; ++i) p.cell[i] = i < n_cell1 ? 1 : 2;

  auto row_ok = [&](std::size_t i) {
    const auto& own = p.cell[i] == 1 ? ds.class1 : ds.class2;
    const auto& other = p.cell[i] == 1 ? ds.class2 : ds.class1;
    for (const auto& x : own) {
      if (!(p.row_dot(i, x) > 0.0)) return false;
    }
    for (const auto& x : other) {
      if (p.row_dot(i, x) > 0.0) return false;
    }
    return true;
  };

  for (std::size_t i = 0; i < h; ++i) {
    const auto& center = p.cell[i] == 1 ? m1 : m2;
    const double scale = gen.uniform(0.5, 1.5);
    double wobble = 0.2;
    for (;;) {
      auto g = random_unit(gen, ds.dim);
      for (std::size_t j = 0; j < ds.dim; ++j) {
        p.w[i * ds.dim + j] = scale * (center[j] + wobble * g[j]);
      }
      if (row_ok(i)) break;
      wobble *= 0.5;
      if (wobble < 1e-6) {
        for (std::size_t j = 0; j < ds.dim; ++j) {
          p.w[i * ds.dim + j] = scale * center[j];
        }
        if (!row_ok(i)) {
          throw DatasetError("make_h23_params: no activation-disjoint row found");
        }
        break;
      }
    }
    const double mag = gen.uniform(0.2, 1.0);
    p.z[i] = p.cell[i] == 1 ? mag : -mag;
  }
  return p;
}

void sgd_step_inplace(NetworkParams& p, std::span<const double> x, int label,
                      double learning_rate, Loss loss) {
  if (x.size() != p.d) throw std::invalid_argument("sgd_step: dimension mismatch");

  // Forward pass.
  double u = 0.0;
  std::vector<double> act(p.h);
  for (std::size_t i = 0; i < p.h; ++i) {
    act[i] = p.row_dot(i, x);
    if (act[i] > 0.0) u += p.z[i] * act[i];
  }

  double delta_f;
  if (loss == Loss::Bce) {
    delta_f = (label == 1 ? 1.0 : 0.0) - sigmoid(u);
  } else {
    const double sign = label == 1 ? 1.0 : -1.0;
    delta_f = sign * u < 1.0 ? sign : 0.0;  // margin met -> no update
  }
  if (delta_f == 0.0) return;

  const double step = learning_rate * delta_f;
  for (std::size_t i = 0; i < p.h; ++i) {
    if (act[i] <= 0.0) continue;  // dead unit, no gradient through the ReLU
    const double zi = p.z[i];
    p.z[i] += step * act[i];
    for (std::size_t j = 0; j < p.d; ++j) {
      p.w[i * p.d + j] += step * zi * x[j];
    }
  }
}

NetworkParams sgd_step(NetworkParams p, std::span<const double> x, int label,
                       double learning_rate, Loss loss) {
  sgd_step_inplace(p, x, label, learning_rate, loss);
  return p;
}

TrainResult train(const NetworkParams& params0, const SeparableDataset& ds,
                  const TrainConfig& config) {
  if (!(config.learning_rate > 0.0)) {
    throw std::domain_error("train: learning_rate must be > 0");
  }
  if (config.steps < 0) throw std::domain_error("train: steps must be >= 0");
  if (config.sampling == Sampling::PerClassRate &&
      (!(config.class1_rate > 0.0) || !(config.class1_rate < 1.0))) {
    throw std::domain_error("train: class1_rate must be in (0, 1)");
  }
  if (ds.class1.empty() || ds.class2.empty()) {
    throw std::domain_error("train: both classes must be non-empty");
  }

  rng::SplitMix64 gen(config.seed);
  TrainResult out;
  out.params = params0;
  out.logit1.reserve(config.steps + 1);
  out.logit2.reserve(config.steps + 1);
  out.class1_draws.reserve(config.steps + 1);
  if (config.record_params) out.history.reserve(config.steps + 1);

  long n1 = 0;
  auto record = [&] {
    out.logit1.push_back(out.params.logit(ds.class1.front()));
    out.logit2.push_back(out.params.logit(ds.class2.front()));
    out.class1_draws.push_back(n1);
    if (config.record_params) out.history.push_back(out.params);
  };
  record();

  const std::size_t total = ds.class1.size() + ds.class2.size();
  for (long step = 0; step < config.steps; ++step) {
    int label;
    std::size_t idx;
    if (config.sampling == Sampling::Uniform) {
      const std::size_t k = gen.bounded(total);
      label = k < ds.class1.size() ? 1 : 2;
      idx = label == 1 ? k : k - ds.class1.size();
    } else {
      label = gen.bernoulli(config.class1_rate) ? 1 : 2;
      idx = gen.bounded(ds.size(label));
    }
    if (label == 1) ++n1;
    sgd_step_inplace(out.params, ds.point(label, idx), label,
                     config.learning_rate, config.loss);
    record();
  }
  return out;
}

ModeReport check_mode_independence(const std::vector<NetworkParams>& history,
                                   const SeparableDataset& ds) {
  ModeReport report;
  if (history.empty()) return report;
  const auto& first = history.front();

  for (const auto& p : history) {
    ++report.snapshots;
    for (std::size_t i = 0; i < p.h; ++i) {
      if (!(p.z[i] * first.z[i] > 0.0)) ++report.z_sign_violations;
    }
    auto check_class = [&](const std::vector<std::vector<double>>& cls,
                           int label) {
      for (const auto& x : cls) {
        for (std::size_t i = 0; i < p.h; ++i) {
          const double a = p.row_dot(i, x);
          const bool own = p.cell[i] == label;
          if (own ? !(a > 0.0) : (a > 0.0)) ++report.active_set_violations;
        }
      }
    };
    check_class(ds.class1, 1);
    check_class(ds.class2, 2);
  }
  return report;
}

// ---- Multi-class ----

MultiClassDataset make_multiclass_dataset(std::uint64_t seed,
                                          std::size_t n_classes, std::size_t d,
                                          std::size_t n_per_class,
                                          double cone_half_angle_deg,
                                          double norm_lo, double norm_hi) {
  if (n_classes < 2) throw std::domain_error("multiclass: need >= 2 classes");
  if (d < n_classes) throw std::domain_error("multiclass: need d >= n_classes");
  // Simplex axes have pairwise angle acos(-1/(C-1)); points within psi of an
  // axis keep cross-class products non-positive when 2 psi <= angle - 90 deg.
  const double axis_angle =
      std::acos(-1.0 / static_cast<double>(n_classes - 1));
  const double psi_max_deg =
      0.5 * (axis_angle * 180.0 / std::numbers::pi - 90.0);
  if (!(cone_half_angle_deg >= 0.0) || cone_half_angle_deg > psi_max_deg) {
    throw std::domain_error("multiclass: cone half-angle must be <= " +
                            std::to_string(psi_max_deg) + " degrees for C = " +
                            std::to_string(n_classes));
  }
  if (!(norm_lo > 0.0) || norm_hi < norm_lo) {
    throw std::domain_error("multiclass: need 0 < norm_lo <= norm_hi");
  }

  // Regular simplex vertices in the first C coordinates.
  const double c = static_cast<double>(n_classes);
  std::vector<std::vector<double>> axes(n_classes, std::vector<double>(d, 0.0));
  for (std::size_t k = 0; k < n_classes; ++k) {
    for (std::size_t j = 0; j < n_classes; ++j) {
      axes[k][j] = (j == k ? 1.0 : 0.0) - 1.0 / c;
    }
    const double n = norm(axes[k]);
    for (auto& v : axes[k]) v /= n;
  }

  rng::SplitMix64 gen(seed);
  const double max_angle = cone_half_angle_deg * std::numbers::pi / 180.0;
  MultiClassDataset ds;
  ds.dim = d;
  ds.classes.resize(n_classes);
  for (std::size_t k = 0; k < n_classes; ++k) {
    for (std::size_t i = 0; i < n_per_class; ++i) {
      auto v = tilted_unit(gen, axes[k], max_angle * gen.uniform());
      const double scale = gen.uniform(norm_lo, norm_hi);
      for (auto& x : v) x *= scale;
      ds.classes[k].push_back(std::move(v));
    }
  }

  for (std::size_t k = 0; k < n_classes; ++k) {
    for (std::size_t k2 = 0; k2 < n_classes; ++k2) {
      for (const auto& a : ds.classes[k]) {
        for (const auto& b : ds.classes[k2]) {
          const double prod = dot(a, b);
          if (k == k2 ? !(prod > 0.0 || &a == &b) : prod > 0.0) {
            throw DatasetError("multiclass: separability verification failed");
          }
        }
      }
    }
  }
  return ds;
}

MultiClassParams make_multiclass_params(const MultiClassDataset& ds,
                                        std::uint64_t seed) {
  const std::size_t c = ds.classes.size();
  rng::SplitMix64 gen(seed);

  MultiClassParams p;
  p.c = c;
  p.d = ds.dim;
  p.w.assign(c * ds.dim, 0.0);
  p.z.assign(c * c, 0.0);

  for (std::size_t k = 0; k < c; ++k) {
    std::vector<double> m(ds.dim, 0.0);
    for (const auto& x : ds.classes[k]) {
      for (std::size_t j = 0; j < ds.dim; ++j) m[j] += x[j];
    }
    const double n = norm(m);
    const double scale = gen.uniform(0.5, 1.5) / n;
    for (std::size_t j = 0; j < ds.dim; ++j) p.w[k * ds.dim + j] = scale * m[j];
  }
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      p.z[i * c + j] = i == j ? gen.uniform(0.3, 1.0) : -gen.uniform(0.0, 0.5);
    }
  }
  return p;
}

void multiclass_sgd_step_inplace(MultiClassParams& p, std::span<const double> x,
                                 std::size_t label, double learning_rate) {
  const std::size_t c = p.c;
  std::vector<double> act(c), hidden(c), f(c, 0.0);
  for (std::size_t i = 0; i < c; ++i) {
    act[i] = dot(std::span<const double>{p.w.data() + i * p.d, p.d}, x);
    hidden[i] = std::max(0.0, act[i]);
  }
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < c; ++j) f[i] += p.z[i * c + j] * hidden[j];
  }

  // Softmax gradient e_label - softmax(f), stabilized by the max logit.
  const double fmax = *std::max_element(f.begin(), f.end());
  double zsum = 0.0;
  std::vector<double> grad(c);
  for (std::size_t i = 0; i < c; ++i) {
    grad[i] = std::exp(f[i] - fmax);
    zsum += grad[i];
  }
  for (std::size_t i = 0; i < c; ++i) {
    grad[i] = (i == label ? 1.0 : 0.0) - grad[i] / zsum;
  }

  // dL/dhidden = Z^T grad, gated by the ReLU.
  std::vector<double> back(c, 0.0);
  for (std::size_t j = 0; j < c; ++j) {
    for (std::size_t i = 0; i < c; ++i) back[j] += p.z[i * c + j] * grad[i];
  }
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      p.z[i * c + j] += learning_rate * grad[i] * hidden[j];
    }
  }
  for (std::size_t j = 0; j < c; ++j) {
    if (act[j] <= 0.0) continue;
    for (std::size_t k = 0; k < p.d; ++k) {
      p.w[j * p.d + k] += learning_rate * back[j] * x[k];
    }
  }
}

ModeReport check_multiclass_modes(const std::vector<MultiClassParams>& history,
                                  const MultiClassDataset& ds) {
  ModeReport report;
  for (const auto& p : history) {
    ++report.snapshots;
    for (std::size_t i = 0; i < p.c; ++i) {
      for (std::size_t j = 0; j < p.c; ++j) {
        const double v = p.z[i * p.c + j];
        if (i == j ? !(v > 0.0) : v > 0.0) ++report.z_sign_violations;
      }
    }
    for (std::size_t k = 0; k < ds.classes.size(); ++k) {
      for (const auto& x : ds.classes[k]) {
        for (std::size_t i = 0; i < p.c; ++i) {
          const double a = dot(std::span<const double>{p.w.data() + i * p.d, p.d}, x);
          if (i == k ? !(a > 0.0) : a > 0.0) ++report.active_set_violations;
        }
      }
    }
  }
  return report;
}

ModeReport run_multiclass_check(const MultiClassDataset& ds,
                                const MultiClassParams& params0, long steps,
                                double learning_rate, std::uint64_t seed) {
  rng::SplitMix64 gen(seed);
  std::vector<MultiClassParams> history;
  history.reserve(steps + 1);
  history.push_back(params0);
  MultiClassParams p = params0;
  const std::size_t c = ds.classes.size();
  for (long s = 0; s < steps; ++s) {
    const std::size_t label = gen.bounded(c);
    const std::size_t idx = gen.bounded(ds.classes[label].size());
    multiclass_sgd_step_inplace(p, ds.classes[label][idx], learning_rate);
    history.push_back(p);
  }
  return check_multiclass_modes(history, ds);
}

// ---- Gradient-starvation experiment ----

StarvationOutcome starvation_experiment(double lambda, double delta,
                                        std::uint64_t seed,
                                        double learning_rate, long max_steps) {
  if (!(lambda > 0.0) || lambda > 1.0) {
    throw std::domain_error("starvation_experiment: lambda must be in (0, 1]");
  }
  if (!(delta > 0.0) || !(delta < 0.5)) {
    throw std::domain_error("starvation_experiment: delta must be in (0, 0.5)");
  }

  const double alpha0 = 0.1;
  const double beta0 = lambda * alpha0;
  const double z0 = 0.1;

  NetworkParams p;
  p.h = 2;
  p.d = 2;
  p.w = {alpha0, beta0,   // class-1 unit, components along e1 and e2
         -0.5, 0.0};      // class-2 unit
  p.z = {z0, -z0};
  p.cell = {1, 2};

  const std::vector<double> both{1.0, 1.0};
  const std::vector<double> x1_only{1.0, 0.0};
  const std::vector<double> neg{-1.0, 0.0};
  const std::vector<double> probe{0.0, 1.0};
  const double conf_target = 1.0 - delta;

  rng::SplitMix64 gen(seed);
  for (long step = 0; step < max_steps; ++step) {
    // The x1-only input is the binding one (beta >= 0 keeps its logit below
    // the two-feature input's), but both class-1 inputs are checked.
    const double c_x1 = sigmoid(p.logit(x1_only));
    const double c_both = sigmoid(p.logit(both));
    if (std::min(c_x1, c_both) >= conf_target) {
      return {c_x1, sigmoid(p.logit(probe)), step};
    }
    if (gen.bernoulli(0.5)) {
      const auto& x = gen.bernoulli(lambda) ? both : x1_only;
      sgd_step_inplace(p, x, 1, learning_rate, Loss::Bce);
    } else {
      sgd_step_inplace(p, neg, 2, learning_rate, Loss::Bce);
    }
  }
  throw HorizonError("starvation_experiment: confidence target not reached in " +
                     std::to_string(max_steps) + " steps");
}

}  // namespace neurodyn::sim
