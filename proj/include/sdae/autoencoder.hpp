#ifndef SDAE_AUTOENCODER_HPP
#define SDAE_AUTOENCODER_HPP

#include "sdae/train.hpp"

namespace sdae {

// Symmetric reconstruction net: input_dim -> hidden_dims... -> input_dim.
// hidden_dims lists only the hidden layers, so the layer count is
// hidden_dims.size() + 1. Activations default to all-sigmoid with a linear
// output layer.
struct AutoencoderSpec {
  Index input_dim = 0;
  std::vector<Index> hidden_dims;
  std::vector<Activation> activations;  // empty = default pattern
};

inline Network build(const AutoencoderSpec& spec, std::uint64_t seed) {
  if (spec.input_dim <= 0)
    throw argument_error("autoencoder: input dim must be positive");
  if (spec.hidden_dims.empty())
    throw argument_error("autoencoder: need at least one hidden layer");
  std::vector<Index> dims;
  dims.push_back(spec.input_dim);
  dims.insert(dims.end(), spec.hidden_dims.begin(), spec.hidden_dims.end());
  dims.push_back(spec.input_dim);
  std::vector<Activation> acts = spec.activations;
  if (acts.empty()) {
    acts.assign(dims.size() - 1, Activation::Sigmoid);
    acts.back() = Activation::Linear;
  }
  return init_network(dims, acts, seed);
}

// Layers holding the code: first half, rounded up for odd hidden counts.
inline Index encoder_depth(const Network& net) {
  const auto hidden = Index(net.layers.size()) - 1;
  return (hidden + 1) / 2;
}

// Bottleneck code for x: input normalization plus the encoder half.
inline Matrix encode(const Network& net, const Matrix& x) {
  validate(net);
  if (x.rows() != net.in_dim()) throw shape_error("encode: input dim mismatch");
  Matrix a = net.input_norm.apply(x);
  const Index depth = encoder_depth(net);
  for (Index l = 0; l < depth; ++l) {
    const DenseLayer& layer = net.layers[std::size_t(l)];
    a = (layer.weights * a).colwise() + layer.biases;
    apply_activation(layer.activation, a);
  }
  return a;
}

inline Vector encode(const Network& net, const Vector& x) {
  return Matrix(encode(net, Matrix(x))).col(0);
}

// Decoder half: maps a code back to output space so that
// decode(encode(x)) == forward(x).
inline Matrix decode(const Network& net, const Matrix& code) {
  validate(net);
  const Index depth = encoder_depth(net);
  if (code.rows() != net.layers[std::size_t(depth) - 1].out_dim())
    throw shape_error("decode: code dim mismatch");
  Matrix a = code;
  for (auto l = std::size_t(depth); l < net.layers.size(); ++l) {
    const DenseLayer& layer = net.layers[l];
    a = (layer.weights * a).colwise() + layer.biases;
    apply_activation(layer.activation, a);
  }
  return net.output_norm.invert(a);
}

struct SparsityPenalty {
  double value = 0.0;
  Vector activation_grad;  // d(penalty)/d(a_ij), same for every sample j
  bool clamped = false;
};

// beta * sum_j KL(rho || rho_hat_j) over the batch-mean activations of one
// layer (rows = units, columns = samples). rho_hat is clamped into
// [1e-7, 1-1e-7]; `clamped` reports whether that fired.
inline SparsityPenalty sparsity_penalty(const Matrix& activations,
                                        double rho_t, double beta) {
  if (activations.cols() == 0)
    throw argument_error("sparsity_penalty: empty batch");
  if (!(rho_t > 0.0 && rho_t < 1.0))
    throw argument_error("sparsity_penalty: target must lie in (0,1)");
  if (beta < 0.0) throw argument_error("sparsity_penalty: beta must be >= 0");
  SparsityPenalty p;
  p.activation_grad.resize(activations.rows());
  const double n = double(activations.cols());
  for (Index j = 0; j < activations.rows(); ++j) {
    double rho_hat = activations.row(j).mean();
    if (rho_hat < 1e-7 || rho_hat > 1.0 - 1e-7) {
      rho_hat = std::clamp(rho_hat, 1e-7, 1.0 - 1e-7);
      p.clamped = true;
    }
    p.value += beta * (rho_t * std::log(rho_t / rho_hat) +
                       (1.0 - rho_t) * std::log((1.0 - rho_t) / (1.0 - rho_hat)));
    p.activation_grad[j] =
        beta * (-rho_t / rho_hat + (1.0 - rho_t) / (1.0 - rho_hat)) / n;
  }
  return p;
}

// Fit input normalization from the corrupted side and output normalization
// from the clean side of the pairs.
inline void fit_normalization(Network& net, const SampleSet& pairs) {
  validate(pairs);
  if (pairs.dim() != net.in_dim() || pairs.dim() != net.out_dim())
    throw shape_error("fit_normalization: sample dim mismatch");
  net.input_norm = fit_feature_affine(pairs.corrupted);
  net.output_norm = fit_feature_affine(pairs.clean);
}

// Train net to map corrupted -> clean. Freshly built nets (identity affines)
// get normalization fitted from the pairs first; nets that already carry
// affines keep them, so fine-tuning an assembled stack is safe.
inline TrainResult train_denoiser(Network net, const SampleSet& train_set,
                                  const SampleSet& valid_set,
                                  const TrainSpec& spec) {
  if (net.input_norm.is_identity() && net.output_norm.is_identity())
    fit_normalization(net, train_set);
  return train(std::move(net), train_set, valid_set, spec);
}

}  // namespace sdae

#endif
