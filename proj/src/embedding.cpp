#include "cadi/embedding.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "cadi/geometry.hpp"
#include "cadi/rng.hpp"

namespace cadi {

std::size_t MlpParams::weight_offset(std::size_t l) const {
  std::size_t off = 0;
  for (std::size_t q = 0; q < l; ++q) {
    off += layer_weight_count(q) + dims[q + 1];
  }
  return off;
}

MlpParams MlpParams::init(std::size_t input_dim, std::size_t output_dim,
                          std::uint64_t seed,
                          std::vector<std::size_t> hidden) {
  MlpParams params;
  params.dims.push_back(input_dim);
  for (std::size_t h : hidden) params.dims.push_back(h);
  params.dims.push_back(output_dim);

  std::size_t total = 0;
  for (std::size_t l = 0; l < params.num_layers(); ++l) {
    total += params.layer_weight_count(l) + params.dims[l + 1];
  }
  params.flat.assign(total, 0.0);

  SplitMix64 rng(seed);
  for (std::size_t l = 0; l < params.num_layers(); ++l) {
    const double limit = std::sqrt(
        6.0 / static_cast<double>(params.dims[l] + params.dims[l + 1]));
    double* w = params.flat.data() + params.weight_offset(l);
    for (std::size_t q = 0; q < params.layer_weight_count(l); ++q) {
      w[q] = limit * (2.0 * rng.next_double() - 1.0);
    }
    // biases stay zero
  }
  return params;
}

void MlpParams::validate() const {
  if (dims.size() < 2) throw ValidationError("mlp: need at least one layer");
  if (activation != "relu") {
    throw ValidationError("mlp: unsupported activation '" + activation + "'");
  }
  std::size_t total = 0;
  for (std::size_t l = 0; l < num_layers(); ++l) {
    total += layer_weight_count(l) + dims[l + 1];
  }
  if (flat.size() != total) {
    throw ValidationError("mlp: parameter vector size mismatch");
  }
  for (double v : flat) {
    if (!std::isfinite(v)) throw ValidationError("mlp: non-finite parameter");
  }
}

namespace {

struct ForwardCache {
  std::vector<Matrix> activations;  // L + 1 entries; [0] is the input
  std::vector<Matrix> preacts;      // L entries
};

void layer_forward(const MlpParams& params, std::size_t l, const Matrix& in,
                   Matrix& pre, Matrix& act, bool is_last) {
  const std::size_t in_dim = params.dims[l];
  const std::size_t out_dim = params.dims[l + 1];
  const double* w = params.flat.data() + params.weight_offset(l);
  const double* b = params.flat.data() + params.bias_offset(l);
  pre = Matrix(in.rows, out_dim);
  for (std::size_t r = 0; r < in.rows; ++r) {
    const double* xr = in.data.data() + r * in_dim;
    double* zr = pre.data.data() + r * out_dim;
    for (std::size_t o = 0; o < out_dim; ++o) {
      const double* wo = w + o * in_dim;
      double acc = b[o];
      for (std::size_t i = 0; i < in_dim; ++i) acc += wo[i] * xr[i];
      zr[o] = acc;
    }
  }
  if (is_last) {
    act = pre;  // linear output layer
  } else {
    act = Matrix(pre.rows, pre.cols);
    for (std::size_t q = 0; q < pre.data.size(); ++q) {
      act.data[q] = pre.data[q] > 0.0 ? pre.data[q] : 0.0;
    }
  }
}

ForwardCache forward_cached(const MlpParams& params, const Matrix& x) {
  const std::size_t layers = params.num_layers();
  ForwardCache cache;
  cache.activations.resize(layers + 1);
  cache.preacts.resize(layers);
  cache.activations[0] = x;
  for (std::size_t l = 0; l < layers; ++l) {
    layer_forward(params, l, cache.activations[l], cache.preacts[l],
                  cache.activations[l + 1], l + 1 == layers);
  }
  return cache;
}

std::vector<double> backward_from_cache(const MlpParams& params,
                                        const ForwardCache& cache,
                                        const Matrix& grad_y) {
  const std::size_t layers = params.num_layers();
  std::vector<double> grads(params.flat.size(), 0.0);
  Matrix delta = grad_y;
  for (std::size_t li = layers; li-- > 0;) {
    const std::size_t in_dim = params.dims[li];
    const std::size_t out_dim = params.dims[li + 1];
    const Matrix& input = cache.activations[li];
    double* gw = grads.data() + params.weight_offset(li);
    double* gb = grads.data() + params.bias_offset(li);
    for (std::size_t r = 0; r < delta.rows; ++r) {
      const double* dr = delta.data.data() + r * out_dim;
      const double* xr = input.data.data() + r * in_dim;
      for (std::size_t o = 0; o < out_dim; ++o) {
        const double d = dr[o];
        if (d == 0.0) continue;
        gb[o] += d;
        double* gwo = gw + o * in_dim;
        for (std::size_t i = 0; i < in_dim; ++i) gwo[i] += d * xr[i];
      }
    }
    if (li == 0) break;
    const double* w = params.flat.data() + params.weight_offset(li);
    Matrix prev(delta.rows, in_dim, 0.0);
    for (std::size_t r = 0; r < delta.rows; ++r) {
      const double* dr = delta.data.data() + r * out_dim;
      double* pr = prev.data.data() + r * in_dim;
      for (std::size_t o = 0; o < out_dim; ++o) {
        const double d = dr[o];
        if (d == 0.0) continue;
        const double* wo = w + o * in_dim;
        for (std::size_t i = 0; i < in_dim; ++i) pr[i] += d * wo[i];
      }
      const double* zr = cache.preacts[li - 1].data.data() + r * in_dim;
      for (std::size_t i = 0; i < in_dim; ++i) {
        if (zr[i] <= 0.0) pr[i] = 0.0;  // ReLU gate
      }
    }
    delta = std::move(prev);
  }
  return grads;
}

}  // namespace

Matrix mlp_forward(const MlpParams& params, const Matrix& x) {
  if (x.cols != params.dims.front()) {
    throw ValidationError("mlp_forward: input has " + std::to_string(x.cols) +
                          " columns, network expects " +
                          std::to_string(params.dims.front()));
  }
  Matrix in = x;
  Matrix pre, act;
  for (std::size_t l = 0; l < params.num_layers(); ++l) {
    layer_forward(params, l, in, pre, act, l + 1 == params.num_layers());
    in = std::move(act);
  }
  return in;
}

std::vector<double> mlp_backward(const MlpParams& params, const Matrix& x,
                                 const Matrix& grad_y) {
  if (x.cols != params.dims.front() || grad_y.cols != params.dims.back() ||
      grad_y.rows != x.rows) {
    throw ValidationError("mlp_backward: shape mismatch");
  }
  const ForwardCache cache = forward_cached(params, x);
  return backward_from_cache(params, cache, grad_y);
}

void adam_step(AdamState& state, std::span<double> params,
               std::span<const double> grads) {
  if (params.size() != grads.size() || params.size() != state.m.size()) {
    throw ValidationError("adam_step: shape mismatch");
  }
  state.step += 1;
  const double bc1 =
      1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double bc2 =
      1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  for (std::size_t p = 0; p < params.size(); ++p) {
    state.m[p] = state.beta1 * state.m[p] + (1.0 - state.beta1) * grads[p];
    state.v[p] =
        state.beta2 * state.v[p] + (1.0 - state.beta2) * grads[p] * grads[p];
    const double m_hat = state.m[p] / bc1;
    const double v_hat = state.v[p] / bc2;
    params[p] -= state.lr * m_hat / (std::sqrt(v_hat) + state.eps);
  }
}

double cadi_loss_and_grad(const Matrix& y, std::span<const Triplet> triplets,
                          std::span<const double> cos_x, Matrix& grad_y) {
  if (cos_x.size() != triplets.size()) {
    throw ValidationError("cadi_loss_and_grad: cosine cache size mismatch");
  }
  grad_y = Matrix(y.rows, y.cols, 0.0);
  if (triplets.empty()) return 0.0;

  const std::size_t t_dim = y.cols;
  const double eps_sq = kDegenerateNormEps * kDegenerateNormEps;
  double loss = 0.0;
  for (std::size_t idx = 0; idx < triplets.size(); ++idx) {
    const Triplet& trip = triplets[idx];
    const double* yi = y.data.data() + trip.i * t_dim;
    const double* yj = y.data.data() + trip.j * t_dim;
    const double* yk = y.data.data() + trip.k * t_dim;
    double uu = 0.0, vv = 0.0, uv = 0.0;
    for (std::size_t c = 0; c < t_dim; ++c) {
      const double u = yj[c] - yi[c];
      const double v = yk[c] - yi[c];
      uu += u * u;
      vv += v * v;
      uv += u * v;
    }
    if (uu < eps_sq || vv < eps_sq) {
      // angle-0 convention: constant branch, no gradient
      const double diff = cos_x[idx] - 1.0;
      loss += diff * diff;
      continue;
    }
    const double inv_norms = 1.0 / (std::sqrt(uu) * std::sqrt(vv));
    const double cy = uv * inv_norms;
    const double diff = cos_x[idx] - std::clamp(cy, -1.0, 1.0);
    loss += diff * diff;
    const double g = -2.0 * diff;  // dLoss/dcy
    double* gi = grad_y.data.data() + trip.i * t_dim;
    double* gj = grad_y.data.data() + trip.j * t_dim;
    double* gk = grad_y.data.data() + trip.k * t_dim;
    for (std::size_t c = 0; c < t_dim; ++c) {
      const double u = yj[c] - yi[c];
      const double v = yk[c] - yi[c];
      const double dj = g * (v * inv_norms - cy * u / uu);
      const double dk = g * (u * inv_norms - cy * v / vv);
      gj[c] += dj;
      gk[c] += dk;
      gi[c] -= dj + dk;
    }
  }
  const double inv_count = 1.0 / static_cast<double>(triplets.size());
  for (double& v : grad_y.data) v *= inv_count;
  return loss * inv_count;
}

double cadi_loss_and_grad(const Matrix& y, const Dataset& x,
                          std::span<const Triplet> triplets, Matrix& grad_y) {
  if (x.n() != y.rows) {
    throw ValidationError("cadi_loss_and_grad: row count mismatch");
  }
  std::vector<double> cos_x(triplets.size());
  for (std::size_t idx = 0; idx < triplets.size(); ++idx) {
    const Triplet& t = triplets[idx];
    cos_x[idx] =
        internal_cosine(x.points.row(t.i), x.points.row(t.j),
                        x.points.row(t.k));
  }
  return cadi_loss_and_grad(y, triplets, cos_x, grad_y);
}

void TrainConfig::validate() const {
  if (epochs < 0) throw ValidationError("train config: negative epochs");
  if (batch_size < 1) throw ValidationError("train config: batch size < 1");
  if (!(lr > 0.0)) throw ValidationError("train config: lr must be positive");
  if (triplets_per_point <= 0.0) {
    throw ValidationError("train config: triplets_per_point must be positive");
  }
  if (weight_decay != 0.0) {
    throw ValidationError("train config: weight decay is fixed at 0");
  }
  if (target_dim < 1) throw ValidationError("train config: target_dim < 1");
}

namespace {

// Remaps a batch of global-index triplets onto the compact set of involved
// rows, in first-appearance order.
struct BatchIndex {
  std::vector<std::uint32_t> unique_rows;
  std::vector<Triplet> local_triplets;
};

BatchIndex build_batch_index(std::span<const Triplet> batch,
                             std::vector<std::int32_t>& scratch) {
  BatchIndex bi;
  bi.local_triplets.reserve(batch.size());
  const auto local_id = [&](std::uint32_t global) -> std::uint32_t {
    if (scratch[global] < 0) {
      scratch[global] = static_cast<std::int32_t>(bi.unique_rows.size());
      bi.unique_rows.push_back(global);
    }
    return static_cast<std::uint32_t>(scratch[global]);
  };
  for (const Triplet& t : batch) {
    bi.local_triplets.push_back({local_id(t.i), local_id(t.j), local_id(t.k)});
  }
  for (std::uint32_t row : bi.unique_rows) scratch[row] = -1;
  return bi;
}

}  // namespace

EmbedResult angle_embedding(const Dataset& x, const Partition& c,
                            const TrainConfig& cfg) {
  cfg.validate();
  if (count_constrained_triplets(c) == 0) {
    throw EmptyTripletSpaceError(
        "angle_embedding: the partition admits no constrained triplets");
  }
  const std::size_t n = x.n();
  const auto t_dim = static_cast<std::size_t>(cfg.target_dim);
  const auto triplets_per_epoch = static_cast<std::uint64_t>(
      std::ceil(cfg.triplets_per_point * static_cast<double>(n)));

  MlpParams params;
  Matrix y_direct;
  if (cfg.mode == EmbedMode::kParametric) {
    params = MlpParams::init(x.dim(), t_dim, SplitMix64::derive(cfg.seed, 0),
                             cfg.hidden);
  } else {
    if (cfg.initial_y) {
      if (cfg.initial_y->rows != n || cfg.initial_y->cols != t_dim) {
        throw ValidationError("angle_embedding: initial_y shape mismatch");
      }
      y_direct = *cfg.initial_y;
    } else {
      y_direct = random_project(n, t_dim, SplitMix64::derive(cfg.seed, 0))
                     .points;
    }
  }

  std::vector<double>& flat =
      cfg.mode == EmbedMode::kParametric ? params.flat : y_direct.data;
  AdamState adam(flat.size(), cfg.lr);

  EmbedResult result;
  result.loss_trace.reserve(cfg.epochs);
  std::vector<std::int32_t> scratch(n, -1);
  std::vector<double> cos_x;
  double initial_loss = 0.0;
  int high_loss_streak = 0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto budget = TripletBudget::with_count(
        triplets_per_epoch,
        SplitMix64::derive(cfg.seed, 1 + static_cast<std::uint64_t>(epoch)));
    const auto triplets = sample_constrained(c, budget);
    cos_x.resize(triplets.size());
    for (std::size_t idx = 0; idx < triplets.size(); ++idx) {
      const Triplet& t = triplets[idx];
      cos_x[idx] = internal_cosine(x.points.row(t.i), x.points.row(t.j),
                                   x.points.row(t.k));
    }

    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < triplets.size();
         start += cfg.batch_size) {
      const std::size_t count =
          std::min<std::size_t>(cfg.batch_size, triplets.size() - start);
      const std::span<const Triplet> batch{triplets.data() + start, count};
      const std::span<const double> batch_cos{cos_x.data() + start, count};

      double loss = 0.0;
      if (cfg.mode == EmbedMode::kParametric) {
        const BatchIndex bi = build_batch_index(batch, scratch);
        Matrix x_batch(bi.unique_rows.size(), x.dim());
        for (std::size_t r = 0; r < bi.unique_rows.size(); ++r) {
          const auto src = x.points.row(bi.unique_rows[r]);
          std::copy(src.begin(), src.end(), x_batch.row(r).begin());
        }
        const ForwardCache cache = forward_cached(params, x_batch);
        Matrix grad_y;
        loss = cadi_loss_and_grad(cache.activations.back(), bi.local_triplets,
                                  batch_cos, grad_y);
        const auto grads = backward_from_cache(params, cache, grad_y);
        adam_step(adam, params.flat, grads);
      } else {
        Matrix grad_y;
        loss = cadi_loss_and_grad(y_direct, batch, batch_cos, grad_y);
        adam_step(adam, y_direct.data, grad_y.data);
      }
      epoch_loss += loss * static_cast<double>(count);
    }
    epoch_loss /= static_cast<double>(triplets.size());
    result.loss_trace.push_back(epoch_loss);

    if (!std::isfinite(epoch_loss)) {
      throw NumericalError("angle_embedding diverged: non-finite loss at "
                           "epoch " + std::to_string(epoch));
    }
    if (epoch == 0) {
      initial_loss = epoch_loss;
    } else if (epoch_loss > 10.0 * initial_loss && initial_loss > 0.0) {
      if (++high_loss_streak >= 20) {
        throw NumericalError(
            "angle_embedding diverged: loss above 10x its initial value for "
            "20 consecutive epochs");
      }
    } else {
      high_loss_streak = 0;
    }
  }

  if (cfg.mode == EmbedMode::kParametric) {
    result.projection.points = mlp_forward(params, x.points);
  } else {
    result.projection.points = std::move(y_direct);
  }
  return result;
}

PcaResult pca_full(const Matrix& points, std::size_t t) {
  if (t < 1 || t > points.cols) {
    throw ValidationError("pca: target dimension must be in [1, d]");
  }
  if (points.rows < 2) throw ValidationError("pca: need at least 2 points");

  using RowMajor =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> mapped(points.data.data(),
                                    static_cast<Eigen::Index>(points.rows),
                                    static_cast<Eigen::Index>(points.cols));
  const Eigen::RowVectorXd mean = mapped.colwise().mean();
  const Eigen::MatrixXd centered = mapped.rowwise() - mean;
  const Eigen::MatrixXd cov =
      centered.transpose() * centered /
      static_cast<double>(points.rows - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("pca: eigendecomposition failed");
  }

  const auto d = static_cast<Eigen::Index>(points.cols);
  PcaResult result;
  result.components = Matrix(t, points.cols);
  double total_variance = 0.0;
  for (Eigen::Index q = 0; q < d; ++q) {
    total_variance += std::max(0.0, solver.eigenvalues()(q));
  }
  Eigen::MatrixXd basis(d, static_cast<Eigen::Index>(t));
  for (std::size_t comp = 0; comp < t; ++comp) {
    // eigenvalues come back ascending; take the top t in descending order
    const Eigen::Index src = d - 1 - static_cast<Eigen::Index>(comp);
    Eigen::VectorXd vec = solver.eigenvectors().col(src);
    Eigen::Index max_row = 0;
    vec.cwiseAbs().maxCoeff(&max_row);
    if (vec(max_row) < 0.0) vec = -vec;
    basis.col(static_cast<Eigen::Index>(comp)) = vec;
    for (std::size_t cc = 0; cc < points.cols; ++cc) {
      result.components.at(comp, cc) = vec(static_cast<Eigen::Index>(cc));
    }
    result.explained_variance_ratio.push_back(
        total_variance > 0.0
            ? std::max(0.0, solver.eigenvalues()(src)) / total_variance
            : 0.0);
  }

  const Eigen::MatrixXd scores = centered * basis;
  result.scores = Matrix(points.rows, t);
  for (std::size_t r = 0; r < points.rows; ++r) {
    for (std::size_t cc = 0; cc < t; ++cc) {
      result.scores.at(r, cc) = scores(static_cast<Eigen::Index>(r),
                                       static_cast<Eigen::Index>(cc));
    }
  }
  return result;
}

Projection pca_project(const Dataset& x, std::size_t t) {
  return Projection{pca_full(x.points, t).scores};
}

Projection random_project(std::size_t n, std::size_t t, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Projection proj;
  proj.points = Matrix(n, t);
  for (double& v : proj.points.data) v = rng.next_double();
  return proj;
}

}  // namespace cadi
