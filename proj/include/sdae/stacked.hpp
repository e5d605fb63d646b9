#ifndef SDAE_STACKED_HPP
#define SDAE_STACKED_HPP

#include "sdae/autoencoder.hpp"

namespace sdae {

// Greedy layer-wise construction of a symmetric denoiser with an odd number
// of hidden layers h_1..h_n. Stage k trains a one-hidden-layer autoencoder
// whose weights become layer k of the encoder and its mirror in the decoder;
// (n+1)/2 stages cover the stack.
struct StackPlan {
  std::vector<Index> hidden_dims;      // odd count
  std::vector<TrainSpec> per_stage_specs;  // one per stage
  TrainSpec finetune_spec;

  struct Perturb {
    double fraction = 0.1;
    double magnitude = 0.05;
    std::uint64_t seed = 0;
  };
  std::optional<Perturb> perturb;  // applied between assembly and fine-tune
};

inline Index stage_count(const StackPlan& plan) {
  return (Index(plan.hidden_dims.size()) + 1) / 2;
}

inline void validate(const StackPlan& plan) {
  if (plan.hidden_dims.empty() || plan.hidden_dims.size() % 2 == 0)
    throw argument_error("stack plan: hidden layer count must be odd");
  for (Index d : plan.hidden_dims)
    if (d <= 0) throw argument_error("stack plan: hidden dims must be positive");
  for (std::size_t k = 0; k < plan.hidden_dims.size() / 2; ++k)
    if (plan.hidden_dims[k] !=
        plan.hidden_dims[plan.hidden_dims.size() - 1 - k])
      throw argument_error("stack plan: hidden dims must be symmetric");
  if (Index(plan.per_stage_specs.size()) != stage_count(plan))
    throw argument_error("stack plan: need " +
                         std::to_string(stage_count(plan)) +
                         " stage specs, got " +
                         std::to_string(plan.per_stage_specs.size()));
  if (plan.perturb) {
    if (!(plan.perturb->fraction >= 0.0 && plan.perturb->fraction <= 1.0))
      throw argument_error("stack plan: perturb fraction must lie in [0,1]");
    if (plan.perturb->magnitude < 0.0)
      throw argument_error("stack plan: perturb magnitude must be >= 0");
  }
}

struct StageResult {
  int stage_index = 0;   // 1-based
  Network net;           // the stage autoencoder (x -> h_k -> x shape)
  Matrix hidden_train;   // h_k codes of the training inputs
  Matrix hidden_valid;
  std::vector<EpochStats> history;
};

// Stage 1 denoises the raw pairs with a sigmoid+linear autoencoder and fitted
// normalization. Stage k >= 2 autoencodes the previous stage's codes with a
// sigmoid+sigmoid net and identity affines (codes already live in (0,1)).
inline std::vector<StageResult> pretrain(const StackPlan& plan,
                                         const SampleSet& train_set,
                                         const SampleSet& valid_set) {
  validate(plan);
  validate(train_set);
  validate(valid_set);
  const Index stages = stage_count(plan);
  std::vector<StageResult> out;
  out.reserve(std::size_t(stages));

  Matrix code_train, code_valid;
  for (Index k = 0; k < stages; ++k) {
    const TrainSpec& spec = plan.per_stage_specs[std::size_t(k)];
    const Index in_dim = k == 0 ? train_set.dim() : plan.hidden_dims[std::size_t(k) - 1];
    AutoencoderSpec ae;
    ae.input_dim = in_dim;
    ae.hidden_dims = {plan.hidden_dims[std::size_t(k)]};
    ae.activations = {Activation::Sigmoid,
                      k == 0 ? Activation::Linear : Activation::Sigmoid};
    Network stage_net = build(ae, mix_seed(spec.seed, std::uint64_t(k)));

    StageResult stage;
    stage.stage_index = int(k) + 1;
    if (k == 0) {
      fit_normalization(stage_net, train_set);
      TrainResult r = train(std::move(stage_net), train_set, valid_set, spec);
      stage.net = std::move(r.net);
      stage.history = std::move(r.history);
      stage.hidden_train = encode(stage.net, train_set.corrupted);
      stage.hidden_valid = encode(stage.net, valid_set.corrupted);
    } else {
      SampleSet code_pairs{code_train, code_train, {}};
      SampleSet code_valid_pairs{code_valid, code_valid, {}};
      TrainResult r =
          train(std::move(stage_net), code_pairs, code_valid_pairs, spec);
      stage.net = std::move(r.net);
      stage.history = std::move(r.history);
      stage.hidden_train = encode(stage.net, code_train);
      stage.hidden_valid = encode(stage.net, code_valid);
    }
    code_train = stage.hidden_train;
    code_valid = stage.hidden_valid;
    out.push_back(std::move(stage));
  }
  return out;
}

// Stitch stage autoencoders into the full symmetric net:
// enc_1..enc_M, dec_M..dec_1. Exact composition of the stage forwards, so the
// assembled net reproduces the nested stage outputs bit for bit.
inline Network assemble(const StackPlan& plan,
                        const std::vector<StageResult>& stages) {
  validate(plan);
  if (Index(stages.size()) != stage_count(plan))
    throw assembly_error("assemble: expected " +
                         std::to_string(stage_count(plan)) + " stages, got " +
                         std::to_string(stages.size()));
  Network net;
  const std::size_t m = stages.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Network& s = stages[k].net;
    if (s.layers.size() != 2)
      throw assembly_error("assemble: stage " + std::to_string(k + 1) +
                           " is not a one-hidden-layer autoencoder");
    if (s.layers[0].out_dim() != plan.hidden_dims[k])
      throw assembly_error("assemble: stage " + std::to_string(k + 1) +
                           " code dim " + std::to_string(s.layers[0].out_dim()) +
                           " != planned " + std::to_string(plan.hidden_dims[k]));
    if (k > 0) {
      if (s.layers[0].in_dim() != plan.hidden_dims[k - 1])
        throw assembly_error("assemble: stage " + std::to_string(k + 1) +
                             " input dim does not chain");
      if (!s.input_norm.is_identity() || !s.output_norm.is_identity())
        throw assembly_error("assemble: stage " + std::to_string(k + 1) +
                             " carries non-identity normalization");
    }
  }
  for (std::size_t k = 0; k < m; ++k) net.layers.push_back(stages[k].net.layers[0]);
  for (std::size_t k = m; k-- > 0;) net.layers.push_back(stages[k].net.layers[1]);
  net.input_norm = stages[0].net.input_norm;
  net.output_norm = stages[0].net.output_norm;
  validate(net);
  return net;
}

// Multiply ceil(fraction * entries) distinct weights of every layer by
// (1 + u), u ~ U(-magnitude, magnitude). Biases and affines untouched.
inline Network perturb_weights(Network net, double fraction, double magnitude,
                               std::uint64_t seed) {
  validate(net);
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw argument_error("perturb: fraction must lie in [0,1]");
  if (magnitude < 0.0) throw argument_error("perturb: magnitude must be >= 0");
  Rng rng(seed);
  std::uniform_real_distribution<double> u(-magnitude, magnitude);
  for (DenseLayer& layer : net.layers) {
    const Index count = layer.weights.size();
    const auto pick = Index(std::ceil(fraction * double(count)));
    std::vector<Index> idx(static_cast<std::size_t>(count));
    std::iota(idx.begin(), idx.end(), Index(0));
    for (Index i = 0; i < pick; ++i) {
      std::uniform_int_distribution<Index> d(i, count - 1);
      std::swap(idx[std::size_t(i)], idx[std::size_t(d(rng))]);
      layer.weights(idx[std::size_t(i)]) *= (1.0 + u(rng));
    }
  }
  return net;
}

// Whole-stack gradient training of the assembled net on the original pairs.
inline TrainResult finetune(Network net, const SampleSet& train_set,
                            const SampleSet& valid_set, const TrainSpec& spec) {
  return train(std::move(net), train_set, valid_set, spec);
}

}  // namespace sdae

#endif
