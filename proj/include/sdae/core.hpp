#ifndef SDAE_CORE_HPP
#define SDAE_CORE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sdae {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using MaskMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;
using Rng = std::mt19937_64;

// Error taxonomy. The CLI maps these onto process exit codes, everything else
// just throws and lets the caller decide.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct shape_error : error {
  using error::error;
};
struct argument_error : error {
  using error::error;
};
struct numeric_error : error {
  using error::error;
};
struct io_error : error {
  using error::error;
};
struct config_error : error {
  using error::error;
};
struct assembly_error : error {
  using error::error;
};
struct coverage_error : error {
  using error::error;
};
struct undefined_metric_error : error {
  using error::error;
};

// Deterministic stream splitting: one base seed fans out to per-sample /
// per-stage streams without correlation between adjacent indices.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

enum class Activation : std::uint8_t { Sigmoid = 0, Linear = 1 };

// Row-major flattening used wherever a 2-D patch feeds a network.
inline Vector flatten_rowmajor(const Matrix& m) {
  Vector v(m.size());
  Index k = 0;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) v[k++] = m(i, j);
  return v;
}

inline Matrix unflatten_rowmajor(const Vector& v, Index rows, Index cols) {
  if (v.size() != rows * cols)
    throw shape_error("unflatten: size " + std::to_string(v.size()) +
                      " != " + std::to_string(rows) + "x" + std::to_string(cols));
  Matrix m(rows, cols);
  Index k = 0;
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = v[k++];
  return m;
}

inline constexpr double sigmoid_floor = std::numeric_limits<double>::min();
inline constexpr double sigmoid_ceil =
    1.0 - std::numeric_limits<double>::epsilon() / 2;

// Clamped to the open interval (0,1): keeps s*(1-s) and the KL sparsity terms
// finite even for saturated units.
inline double sigmoid(double u) {
  double s = 1.0 / (1.0 + std::exp(-u));
  if (s < sigmoid_floor) return sigmoid_floor;
  if (s > sigmoid_ceil) return sigmoid_ceil;
  return s;
}

inline void apply_activation(Activation act, Matrix& m) {
  if (act == Activation::Linear) return;
  m.array() = 1.0 / (1.0 + (-m.array()).exp());
  m.array() = m.array().min(sigmoid_ceil).max(sigmoid_floor);
}

inline const char* activation_name(Activation a) {
  return a == Activation::Sigmoid ? "sigmoid" : "linear";
}

struct DenseLayer {
  Matrix weights;  // out_dim x in_dim
  Vector biases;   // out_dim
  Activation activation = Activation::Sigmoid;

  Index in_dim() const { return weights.cols(); }
  Index out_dim() const { return weights.rows(); }
};

// Per-feature affine u = (x - shift) / scale, with the exact inverse
// x = u * scale + shift. Fitted scales are floored away from zero on
// construction, so apply/invert never divide by zero.
struct FeatureAffine {
  Vector shift;
  Vector scale;

  static FeatureAffine identity(Index dim) {
    FeatureAffine a;
    a.shift = Vector::Zero(dim);
    a.scale = Vector::Ones(dim);
    return a;
  }

  Index dim() const { return shift.size(); }

  bool is_identity() const {
    return shift.isZero(0.0) && (scale.array() == 1.0).all();
  }

  Vector apply(const Vector& x) const {
    return (x - shift).cwiseQuotient(scale);
  }
  Vector invert(const Vector& u) const {
    return u.cwiseProduct(scale) + shift;
  }
  Matrix apply(const Matrix& x) const {
    return (x.colwise() - shift).array().colwise() / scale.array();
  }
  Matrix invert(const Matrix& u) const {
    return (u.array().colwise() * scale.array()).colwise() + shift.array();
  }
};

// Fit shift = per-feature mean, scale = per-feature range. Constant features
// get scale 1 so they pass through centered at zero.
inline FeatureAffine fit_feature_affine(const Matrix& data) {
  if (data.cols() == 0) throw argument_error("fit_feature_affine: no samples");
  FeatureAffine a;
  a.shift = data.rowwise().mean();
  Vector range = data.rowwise().maxCoeff() - data.rowwise().minCoeff();
  a.scale = (range.array() < 1e-300).select(Vector::Ones(range.size()), range);
  return a;
}

struct Network {
  std::vector<DenseLayer> layers;
  FeatureAffine input_norm;
  FeatureAffine output_norm;

  Index in_dim() const { return layers.front().in_dim(); }
  Index out_dim() const { return layers.back().out_dim(); }
};

inline void validate(const Network& net) {
  if (net.layers.empty()) throw shape_error("network has no layers");
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const DenseLayer& layer = net.layers[l];
    if (layer.weights.rows() == 0 || layer.weights.cols() == 0)
      throw shape_error("layer " + std::to_string(l) + " is empty");
    if (layer.biases.size() != layer.out_dim())
      throw shape_error("layer " + std::to_string(l) + " bias size " +
                        std::to_string(layer.biases.size()) +
                        " != out dim " + std::to_string(layer.out_dim()));
    if (l + 1 < net.layers.size() &&
        net.layers[l + 1].in_dim() != layer.out_dim())
      throw shape_error("layer " + std::to_string(l + 1) + " in dim " +
                        std::to_string(net.layers[l + 1].in_dim()) +
                        " != layer " + std::to_string(l) + " out dim " +
                        std::to_string(layer.out_dim()));
  }
  if (net.input_norm.dim() != net.in_dim())
    throw shape_error("input norm dim != network input dim");
  if (net.output_norm.dim() != net.out_dim())
    throw shape_error("output norm dim != network output dim");
}

// Glorot-uniform weights, zero biases.
inline Network init_network(const std::vector<Index>& dims,
                            const std::vector<Activation>& activations,
                            std::uint64_t seed) {
  if (dims.size() < 2) throw argument_error("init_network: need >= 2 dims");
  if (activations.size() != dims.size() - 1)
    throw argument_error("init_network: need one activation per layer");
  for (Index d : dims)
    if (d <= 0) throw argument_error("init_network: dims must be positive");

  Rng rng(seed);
  Network net;
  net.layers.resize(dims.size() - 1);
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    Index fan_in = dims[l], fan_out = dims[l + 1];
    double bound = std::sqrt(6.0 / double(fan_in + fan_out));
    std::uniform_real_distribution<double> u(-bound, bound);
    DenseLayer& layer = net.layers[l];
    layer.weights.resize(fan_out, fan_in);
    for (Index i = 0; i < fan_out; ++i)
      for (Index j = 0; j < fan_in; ++j) layer.weights(i, j) = u(rng);
    layer.biases = Vector::Zero(fan_out);
    layer.activation = activations[l];
  }
  net.input_norm = FeatureAffine::identity(dims.front());
  net.output_norm = FeatureAffine::identity(dims.back());
  return net;
}

// Activations per layer for a whole batch (columns = samples).
// activations[0] is the normalized input, activations[l+1] the output of
// layer l; the last entry is still in normalized output space.
inline std::vector<Matrix> forward_cached(const Network& net, const Matrix& x) {
  std::vector<Matrix> acts;
  acts.reserve(net.layers.size() + 1);
  acts.push_back(net.input_norm.apply(x));
  for (const DenseLayer& layer : net.layers) {
    Matrix z = (layer.weights * acts.back()).colwise() + layer.biases;
    apply_activation(layer.activation, z);
    acts.push_back(std::move(z));
  }
  return acts;
}

inline Matrix forward(const Network& net, const Matrix& x) {
  if (x.rows() != net.in_dim())
    throw shape_error("forward: input dim " + std::to_string(x.rows()) +
                      " != network input dim " + std::to_string(net.in_dim()));
  Matrix a = net.input_norm.apply(x);
  for (const DenseLayer& layer : net.layers) {
    a = (layer.weights * a).colwise() + layer.biases;
    apply_activation(layer.activation, a);
  }
  Matrix z = net.output_norm.invert(a);
  if (!z.allFinite()) throw numeric_error("forward: non-finite output");
  return z;
}

inline Vector forward(const Network& net, const Vector& x) {
  Matrix z = forward(net, Matrix(x));
  return z.col(0);
}

struct SparsitySpec {
  double target_activation = 0.05;  // rho
  double weight = 0.1;              // beta
  int layer_index = 0;              // layer whose output activations are penalized
};

struct TrainSpec {
  double learning_rate = 0.05;
  int max_epochs = 1000;
  int batch_size = 64;
  std::vector<double> l2_lambda;  // per weight matrix; empty = all zero
  std::optional<SparsitySpec> sparsity;
  std::uint64_t seed = 0;
  int early_stop_patience = 200;
};

inline void validate(const TrainSpec& spec, const Network& net) {
  if (!(spec.learning_rate > 0.0))
    throw argument_error("train spec: learning rate must be positive");
  if (spec.max_epochs < 0)
    throw argument_error("train spec: max epochs must be >= 0");
  if (spec.batch_size < 1)
    throw argument_error("train spec: batch size must be >= 1");
  if (spec.early_stop_patience < 0)
    throw argument_error("train spec: patience must be >= 0");
  if (!spec.l2_lambda.empty() && spec.l2_lambda.size() != net.layers.size())
    throw argument_error("train spec: l2 lambda count " +
                         std::to_string(spec.l2_lambda.size()) +
                         " != layer count " +
                         std::to_string(net.layers.size()));
  for (double l : spec.l2_lambda)
    if (l < 0.0) throw argument_error("train spec: l2 lambda must be >= 0");
  if (spec.sparsity) {
    const SparsitySpec& s = *spec.sparsity;
    if (!(s.target_activation > 0.0 && s.target_activation < 1.0))
      throw argument_error("train spec: sparsity target must lie in (0,1)");
    if (s.weight < 0.0)
      throw argument_error("train spec: sparsity weight must be >= 0");
    if (s.layer_index < 0 || std::size_t(s.layer_index) >= net.layers.size())
      throw argument_error("train spec: sparsity layer index out of range");
    if (net.layers[std::size_t(s.layer_index)].activation !=
        Activation::Sigmoid)
      throw argument_error("train spec: sparsity layer must be sigmoid");
  }
}

struct Gradients {
  std::vector<Matrix> weights;
  std::vector<Vector> biases;
};

// Paired clean/corrupted samples, columns = samples. `noisy` flags which
// columns were actually corrupted (clean training samples keep
// corrupted == clean). For supervised use: inputs live in `corrupted`,
// targets in `clean`.
struct SampleSet {
  Matrix clean;
  Matrix corrupted;
  std::vector<std::uint8_t> noisy;

  Index count() const { return clean.cols(); }
  Index dim() const { return clean.rows(); }
};

inline void validate(const SampleSet& set) {
  if (set.clean.cols() != set.corrupted.cols() ||
      set.clean.rows() != set.corrupted.rows())
    throw shape_error("sample set: clean/corrupted shape mismatch");
  if (set.clean.cols() == 0) throw argument_error("sample set: empty");
  if (!set.noisy.empty() && Index(set.noisy.size()) != set.clean.cols())
    throw shape_error("sample set: noisy flag count mismatch");
}

inline SampleSet subset(const SampleSet& set, const std::vector<Index>& idx) {
  SampleSet out;
  out.clean.resize(set.clean.rows(), Index(idx.size()));
  out.corrupted.resize(set.corrupted.rows(), Index(idx.size()));
  out.noisy.resize(idx.size(), 0);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    out.clean.col(Index(k)) = set.clean.col(idx[k]);
    out.corrupted.col(Index(k)) = set.corrupted.col(idx[k]);
    if (!set.noisy.empty()) out.noisy[k] = set.noisy[std::size_t(idx[k])];
  }
  return out;
}

// Seeded shuffle + split into (train, valid). Keeps the clean/noisy mix
// balanced in expectation without stratifying.
inline std::pair<SampleSet, SampleSet> split_train_valid(const SampleSet& set,
                                                         double valid_fraction,
                                                         std::uint64_t seed) {
  validate(set);
  if (!(valid_fraction >= 0.0 && valid_fraction < 1.0))
    throw argument_error("split: valid fraction must lie in [0,1)");
  std::vector<Index> idx(std::size_t(set.count()));
  std::iota(idx.begin(), idx.end(), Index(0));
  Rng rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  auto n_valid = Index(std::llround(valid_fraction * double(set.count())));
  if (set.count() - n_valid < 1)
    throw argument_error("split: no training samples left");
  std::vector<Index> valid_idx(idx.begin(), idx.begin() + n_valid);
  std::vector<Index> train_idx(idx.begin() + n_valid, idx.end());
  return {subset(set, train_idx), subset(set, valid_idx)};
}

}  // namespace sdae

#endif
