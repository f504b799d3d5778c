#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cadi/cadi_metric.hpp"
#include "cadi/dataset.hpp"
#include "cadi/sampling.hpp"

namespace cadi {

/// Feedforward network parameters, flattened into one vector so the
/// optimizer and gradient checks treat all weights uniformly. Layout per
/// layer l: weight matrix (out x in, row-major) followed by the bias.
/// Default architecture: d -> 128 -> 128 -> t with ReLU hidden activations
/// and a linear output layer.
struct MlpParams {
  std::vector<std::size_t> dims;  // {d, hidden..., t}
  std::vector<double> flat;
  std::string activation = "relu";

  std::size_t num_layers() const { return dims.size() - 1; }
  std::size_t layer_weight_count(std::size_t l) const {
    return dims[l] * dims[l + 1];
  }
  std::size_t weight_offset(std::size_t l) const;
  std::size_t bias_offset(std::size_t l) const {
    return weight_offset(l) + layer_weight_count(l);
  }
  std::span<const double> weight(std::size_t l) const {
    return {flat.data() + weight_offset(l), layer_weight_count(l)};
  }
  std::span<const double> bias(std::size_t l) const {
    return {flat.data() + bias_offset(l), dims[l + 1]};
  }

  /// Uniform fan-in/fan-out initialization (+-sqrt(6/(in+out))), zero biases.
  static MlpParams init(std::size_t input_dim, std::size_t output_dim,
                        std::uint64_t seed,
                        std::vector<std::size_t> hidden = {128, 128});

  void validate() const;
};

/// Batch forward pass; X is n x d, result is n x t.
Matrix mlp_forward(const MlpParams& params, const Matrix& x);

/// Backpropagation: gradient of sum_b <grad_y[b], y[b]> with respect to every
/// parameter, i.e. the pullback of dL/dY through the network. Returns a flat
/// vector aligned with MlpParams::flat.
std::vector<double> mlp_backward(const MlpParams& params, const Matrix& x,
                                 const Matrix& grad_y);

/// Bias-corrected Adam state over a flat parameter vector.
struct AdamState {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::uint64_t step = 0;
  std::vector<double> m, v;

  explicit AdamState(std::size_t n_params, double lr_in = 1e-3)
      : lr(lr_in), m(n_params, 0.0), v(n_params, 0.0) {}
};

void adam_step(AdamState& state, std::span<double> params,
               std::span<const double> grads);

/// Mean over triplets of (cos th_X - cos th_Y)^2 plus the analytic gradient
/// with respect to Y, written into grad_y (same shape as y, zeroed first).
/// cos_x holds the precomputed dataset-space cosine per triplet. Triplets
/// degenerate in Y contribute the constant-branch value (cos = 1) and a zero
/// gradient.
double cadi_loss_and_grad(const Matrix& y, std::span<const Triplet> triplets,
                          std::span<const double> cos_x, Matrix& grad_y);

/// Convenience overload computing the dataset-space cosines on the fly.
double cadi_loss_and_grad(const Matrix& y, const Dataset& x,
                          std::span<const Triplet> triplets, Matrix& grad_y);

enum class EmbedMode { kParametric, kNonparametric };

struct TrainConfig {
  int epochs = 200;
  double triplets_per_point = 10.0;  // per-epoch resample budget
  int batch_size = 512;
  std::uint64_t seed = 0;
  EmbedMode mode = EmbedMode::kParametric;
  double lr = 1e-3;
  double weight_decay = 0.0;  // fixed at 0; the model is meant to overfit
  int target_dim = 2;
  std::vector<std::size_t> hidden = {128, 128};
  std::optional<Matrix> initial_y;  // nonparametric start, defaults uniform

  void validate() const;
};

struct EmbedResult {
  Projection projection;
  std::vector<double> loss_trace;  // mean sampled CADI loss per epoch
};

/// Minimizes sampled CADI with minibatch Adam. Parametric mode trains the
/// MLP and emits a final full forward pass; nonparametric mode optimizes the
/// output coordinates directly. Fresh constrained triplets are drawn every
/// epoch from a seed derived from (cfg.seed, epoch). Deterministic for a
/// fixed (dataset, partition, config).
EmbedResult angle_embedding(const Dataset& x, const Partition& c,
                            const TrainConfig& cfg);

/// PCA scores plus the component vectors (t x d) and per-component explained
/// variance ratios. Sign convention: each component's largest-magnitude
/// entry is positive.
struct PcaResult {
  Matrix scores;
  Matrix components;
  std::vector<double> explained_variance_ratio;
};
PcaResult pca_full(const Matrix& points, std::size_t t);
Projection pca_project(const Dataset& x, std::size_t t);

/// Positions i.i.d. uniform in the unit square/cube.
Projection random_project(std::size_t n, std::size_t t, std::uint64_t seed);

}  // namespace cadi
