#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace neurodyn::sim {

// Two linearly separable classes: every within-class inner product is
// strictly positive, every cross-class inner product non-positive. Verified
// exhaustively at construction.
struct SeparableDataset {
  std::size_t dim = 0;
  std::vector<std::vector<double>> class1;
  std::vector<std::vector<double>> class2;

  const std::vector<double>& point(int label, std::size_t i) const {
    return label == 1 ? class1[i] : class2[i];
  }
  std::size_t size(int label) const {
    return label == 1 ? class1.size() : class2.size();
  }
};

struct DatasetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Throws DatasetError if the separability assumption fails on any pair.
void verify_separability(const SeparableDataset& ds);

// Class 1 is sampled inside a cone of the given half-angle about a random
// unit axis with norms in [norm_lo, norm_hi]; class 2 is the negation of an
// independent sample set from the same cone. Half-angles below 45 degrees
// make within-class inner products provably positive.
SeparableDataset make_dataset(std::uint64_t seed, std::size_t d,
                              std::size_t n_per_class,
                              double cone_half_angle_deg, double norm_lo,
                              double norm_hi);

// One hidden layer of h ReLU units with scalar output weights. `cell[i]` is
// the class (1 or 2) owning hidden unit i.
struct NetworkParams {
  std::size_t h = 0;
  std::size_t d = 0;
  std::vector<double> w;     // h x d, row-major
  std::vector<double> z;     // h
  std::vector<int> cell;     // h

  double row_dot(std::size_t i, std::span<const double> x) const;
  // Network logit z^T (W x)_+.
  double logit(std::span<const double> x) const;
};

// Rows of each cell point into their class's dual cone (dominant direction =
// normalized class mean) plus a small perturbation, shrunk until the
// class-disjoint activation pattern holds; z signs match the partition.
NetworkParams make_h23_params(const SeparableDataset& ds, std::size_t h,
                              std::uint64_t seed);

enum class Loss { Bce, Hinge };
enum class Sampling { Uniform, PerClassRate };

struct TrainConfig {
  double learning_rate;
  long steps;
  std::uint64_t seed;
  Sampling sampling = Sampling::Uniform;
  double class1_rate = 0.5;  // p, used by PerClassRate
  Loss loss = Loss::Bce;
  bool record_params = false;  // keep a per-step snapshot for mode checks
};

// One ReLU-gated backprop update from a single observation. The gated form
// coincides with the class-mask update exactly while the mode-independence
// conditions hold, which makes the lemma an emergent check.
void sgd_step_inplace(NetworkParams& p, std::span<const double> x, int label,
                      double learning_rate, Loss loss);
NetworkParams sgd_step(NetworkParams p, std::span<const double> x, int label,
                       double learning_rate, Loss loss);

struct TrainResult {
  NetworkParams params;
  // Per-step logits of the first point of each class, step 0 = initial.
  std::vector<double> logit1;
  std::vector<double> logit2;
  // Number of class-1 samples drawn up to and including each step.
  std::vector<long> class1_draws;
  std::vector<NetworkParams> history;  // only if record_params
};

TrainResult train(const NetworkParams& params0, const SeparableDataset& ds,
                  const TrainConfig& config);

struct ModeReport {
  long z_sign_violations = 0;
  long active_set_violations = 0;
  long snapshots = 0;

  long total() const { return z_sign_violations + active_set_violations; }
};

// Checks every snapshot against the mode-independence property: the z sign
// pattern never changes, and each datapoint activates exactly its class's
// partition cell.
ModeReport check_mode_independence(const std::vector<NetworkParams>& history,
                                   const SeparableDataset& ds);

// ---- Multi-class variant (C classes, h = C hidden units) ----

struct MultiClassDataset {
  std::size_t dim = 0;
  std::vector<std::vector<std::vector<double>>> classes;  // [C][n][d]
};

// Class axes are the vertices of a regular simplex (pairwise inner product
// -1/(C-1)); the cone half-angle must keep cross-class products non-positive.
MultiClassDataset make_multiclass_dataset(std::uint64_t seed, std::size_t n_classes,
                                          std::size_t d, std::size_t n_per_class,
                                          double cone_half_angle_deg,
                                          double norm_lo, double norm_hi);

struct MultiClassParams {
  std::size_t c = 0;
  std::size_t d = 0;
  std::vector<double> w;  // C x d
  std::vector<double> z;  // C x C, diagonal-positive
};

MultiClassParams make_multiclass_params(const MultiClassDataset& ds,
                                        std::uint64_t seed);

void multiclass_sgd_step_inplace(MultiClassParams& p, std::span<const double> x,
                                 std::size_t label, double learning_rate);

ModeReport check_multiclass_modes(const std::vector<MultiClassParams>& history,
                                  const MultiClassDataset& ds);

// Trains for `steps` uniform draws and checks every snapshot.
ModeReport run_multiclass_check(const MultiClassDataset& ds,
                                const MultiClassParams& params0, long steps,
                                double learning_rate, std::uint64_t seed);

// ---- Gradient-starvation experiment ----

struct HorizonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StarvationOutcome {
  double conf_x1;  // confidence on (e1, 0) at stopping
  double conf_x2;  // confidence on the probe (0, e2)
  long steps;
};

// Discrete realization of the feature-frequency setting: class-1 samples are
// e1+e2 with probability lambda and e1 otherwise, class 2 is -e1. Training
// stops once both class-1 inputs reach confidence 1-delta (the binding one
// is the x1-only input). Initialization: alpha0 = 0.1, beta0 = lambda*alpha0,
// z0 = 0.1.
StarvationOutcome starvation_experiment(double lambda, double delta,
                                        std::uint64_t seed,
                                        double learning_rate, long max_steps);

}  // namespace neurodyn::sim
