#ifndef SDAE_TRAIN_HPP
#define SDAE_TRAIN_HPP

#include "sdae/core.hpp"

namespace sdae {

// Mean squared reconstruction error over samples (columns):
// sum_i ||out_i - target_i||^2 / N.
inline double loss_mse(const Matrix& target, const Matrix& out) {
  if (target.rows() != out.rows() || target.cols() != out.cols())
    throw shape_error("loss_mse: shape mismatch");
  if (target.cols() == 0) throw argument_error("loss_mse: empty batch");
  return (out - target).squaredNorm() / double(target.cols());
}

namespace detail {

// d(KL(rho || rho_hat))/d(rho_hat), rho_hat clamped into (0,1).
inline double kl_grad(double rho, double rho_hat) {
  rho_hat = std::clamp(rho_hat, 1e-7, 1.0 - 1e-7);
  return -rho / rho_hat + (1.0 - rho) / (1.0 - rho_hat);
}

// Gradient of loss_scale * sum_i ||a_i - norm(t_i)||^2 where a_i is the last
// activation and norm the output affine, plus, when `sparsity` is set, the
// KL penalty on the designated layer's batch-mean activation. Expects
// activations from forward_cached. The residual lives in normalized space,
// so step sizes transfer between datasets regardless of raw feature range.
inline Gradients backprop_impl(const Network& net,
                               const std::vector<Matrix>& acts,
                               const Matrix& target, double loss_scale,
                               const SparsitySpec* sparsity) {
  const auto n_layers = Index(net.layers.size());
  const Index n = target.cols();
  Gradients g;
  g.weights.resize(std::size_t(n_layers));
  g.biases.resize(std::size_t(n_layers));

  Matrix delta =
      (2.0 * loss_scale) * (acts.back() - net.output_norm.apply(target));

  for (Index l = n_layers - 1; l >= 0; --l) {
    const DenseLayer& layer = net.layers[std::size_t(l)];
    const Matrix& a_out = acts[std::size_t(l) + 1];
    if (sparsity && sparsity->layer_index == int(l)) {
      Vector rho_hat = a_out.rowwise().mean();
      Vector push(rho_hat.size());
      for (Index j = 0; j < rho_hat.size(); ++j)
        push[j] = sparsity->weight *
                  kl_grad(sparsity->target_activation, rho_hat[j]) / double(n);
      delta.colwise() += push;
    }
    if (layer.activation == Activation::Sigmoid)
      delta.array() *= a_out.array() * (1.0 - a_out.array());
    g.weights[std::size_t(l)].noalias() =
        delta * acts[std::size_t(l)].transpose();
    g.biases[std::size_t(l)] = delta.rowwise().sum();
    if (l > 0) delta = layer.weights.transpose() * delta;
  }
  return g;
}

}  // namespace detail

// Gradient of the squared error between the network's last activation and
// the target mapped through the output affine, summed over the batch when
// given matrices. L2 terms are applied by sgd_step, not here.
inline Gradients backprop(const Network& net, const Matrix& x,
                          const Matrix& target) {
  validate(net);
  if (x.rows() != net.in_dim() || target.rows() != net.out_dim() ||
      x.cols() != target.cols())
    throw shape_error("backprop: input/target shape mismatch");
  if (x.cols() == 0) throw argument_error("backprop: empty batch");
  std::vector<Matrix> acts = forward_cached(net, x);
  return detail::backprop_impl(net, acts, target, 1.0, nullptr);
}

inline Gradients backprop(const Network& net, const Vector& x,
                          const Vector& target) {
  return backprop(net, Matrix(x), Matrix(target));
}

// theta <- theta - lr * (grad + lambda_l * theta), biases without decay.
inline void sgd_step(Network& net, const Gradients& grads,
                     const TrainSpec& spec) {
  if (grads.weights.size() != net.layers.size() ||
      grads.biases.size() != net.layers.size())
    throw shape_error("sgd_step: gradient/layer count mismatch");
  const double lr = spec.learning_rate;
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    DenseLayer& layer = net.layers[l];
    if (grads.weights[l].rows() != layer.weights.rows() ||
        grads.weights[l].cols() != layer.weights.cols() ||
        grads.biases[l].size() != layer.biases.size())
      throw shape_error("sgd_step: gradient shape mismatch at layer " +
                        std::to_string(l));
    double lambda = spec.l2_lambda.empty() ? 0.0 : spec.l2_lambda[l];
    if (lambda != 0.0) layer.weights *= (1.0 - lr * lambda);
    layer.weights.noalias() -= lr * grads.weights[l];
    layer.biases.noalias() -= lr * grads.biases[l];
  }
}

struct EpochStats {
  double train_loss = 0.0;
  double valid_loss = 0.0;
};

struct TrainResult {
  Network net;                      // best-validation parameters
  std::vector<EpochStats> history;  // one entry per completed epoch
};

// Mini-batch SGD with early stopping on validation loss. Inputs are the
// corrupted side, targets the clean side. Both recorded losses are mean
// squared error in the output affine's normalized space; training loss is
// the running mean over the epoch's batches (weights move between batches,
// so it is an estimate).
inline TrainResult train(Network net, const SampleSet& train_set,
                         const SampleSet& valid_set, const TrainSpec& spec) {
  validate(net);
  validate(spec, net);
  validate(train_set);
  validate(valid_set);
  if (train_set.dim() != net.in_dim() || train_set.dim() != net.out_dim())
    throw shape_error("train: sample dim " + std::to_string(train_set.dim()) +
                      " does not match network " +
                      std::to_string(net.in_dim()) + "->" +
                      std::to_string(net.out_dim()));
  if (valid_set.dim() != train_set.dim())
    throw shape_error("train: valid set dim mismatch");

  const Index n = train_set.count();
  const auto batch = Index(std::min<Index>(spec.batch_size, n));
  const SparsitySpec* sparsity = spec.sparsity ? &*spec.sparsity : nullptr;

  TrainResult result;
  result.net = net;
  result.history.reserve(std::size_t(spec.max_epochs));
  double best_valid = std::numeric_limits<double>::infinity();
  int stale = 0;

  Rng rng(spec.seed);
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index(0));
  Matrix xb(train_set.dim(), batch), tb(train_set.dim(), batch);

  for (int epoch = 0; epoch < spec.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double sq_sum = 0.0;
    for (Index start = 0; start < n; start += batch) {
      const Index m = std::min(batch, n - start);
      for (Index k = 0; k < m; ++k) {
        xb.col(k) = train_set.corrupted.col(order[std::size_t(start + k)]);
        tb.col(k) = train_set.clean.col(order[std::size_t(start + k)]);
      }
      auto xv = xb.leftCols(m), tv = tb.leftCols(m);
      std::vector<Matrix> acts = forward_cached(net, xv);
      sq_sum += (acts.back() - net.output_norm.apply(Matrix(tv))).squaredNorm();
      Gradients g =
          detail::backprop_impl(net, acts, tv, 1.0 / double(m), sparsity);
      sgd_step(net, g, spec);
    }
    EpochStats stats;
    stats.train_loss = sq_sum / double(n);
    stats.valid_loss =
        loss_mse(net.output_norm.apply(valid_set.clean),
                 forward_cached(net, valid_set.corrupted).back());
    if (!std::isfinite(stats.train_loss) || !std::isfinite(stats.valid_loss))
      throw numeric_error("train: loss diverged at epoch " +
                          std::to_string(epoch));
    result.history.push_back(stats);
    if (stats.valid_loss < best_valid) {
      best_valid = stats.valid_loss;
      result.net = net;
      stale = 0;
    } else if (++stale > spec.early_stop_patience) {
      break;
    }
  }
  return result;
}

// Central-difference gradient of the normalized-space squared error, the
// same objective backprop differentiates, over every weight and bias. Audit
// tool for backprop; O(params) forward passes.
inline Gradients finite_difference_gradients(Network net, const Vector& x,
                                             const Vector& target,
                                             double step = 1e-6) {
  validate(net);
  if (x.size() != net.in_dim() || target.size() != net.out_dim())
    throw shape_error("finite_difference_gradients: input/target dim");
  const Vector t = net.output_norm.apply(target);
  auto loss_at = [&]() {
    Matrix a = forward_cached(net, x).back();
    return (a.col(0) - t).squaredNorm();
  };
  Gradients g;
  g.weights.resize(net.layers.size());
  g.biases.resize(net.layers.size());
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    DenseLayer& layer = net.layers[l];
    g.weights[l].resize(layer.weights.rows(), layer.weights.cols());
    g.biases[l].resize(layer.biases.size());
    for (Index i = 0; i < layer.weights.size(); ++i) {
      double saved = layer.weights(i);
      layer.weights(i) = saved + step;
      double up = loss_at();
      layer.weights(i) = saved - step;
      double down = loss_at();
      layer.weights(i) = saved;
      g.weights[l](i) = (up - down) / (2.0 * step);
    }
    for (Index i = 0; i < layer.biases.size(); ++i) {
      double saved = layer.biases[i];
      layer.biases[i] = saved + step;
      double up = loss_at();
      layer.biases[i] = saved - step;
      double down = loss_at();
      layer.biases[i] = saved;
      g.biases[l][i] = (up - down) / (2.0 * step);
    }
  }
  return g;
}

}  // namespace sdae

#endif
