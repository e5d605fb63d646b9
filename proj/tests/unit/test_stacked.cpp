#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sdae;
using testutil::random_matrix;
using testutil::random_vector;

namespace {

StackPlan tiny_plan(std::vector<Index> hidden, int stage_epochs = 3,
                    int finetune_epochs = 3) {
  StackPlan plan;
  plan.hidden_dims = std::move(hidden);
  TrainSpec stage;
  stage.max_epochs = stage_epochs;
  stage.batch_size = 8;
  for (Index k = 0; k < stage_count(plan); ++k) {
    stage.seed = std::uint64_t(100 + k);
    plan.per_stage_specs.push_back(stage);
  }
  plan.finetune_spec = stage;
  plan.finetune_spec.max_epochs = finetune_epochs;
  return plan;
}

SampleSet noisy_pairs(Index dim, Index count, std::uint64_t seed) {
  SampleSet s;
  s.clean = random_matrix(dim, count, seed, 0.0, 1.0);
  s.corrupted = s.clean + 0.05 * random_matrix(dim, count, seed + 1);
  s.noisy.assign(std::size_t(count), 1);
  return s;
}

}  // namespace

TEST_CASE("stack plans demand odd symmetric positive hidden dims",
          "[stacked]") {
  CHECK(stage_count(tiny_plan({6})) == 1);
  CHECK(stage_count(tiny_plan({6, 4, 6})) == 2);
  CHECK(stage_count(tiny_plan({8, 6, 4, 6, 8})) == 3);

  StackPlan even = tiny_plan({6, 6});
  CHECK_THROWS_AS(validate(even), argument_error);
  StackPlan lopsided = tiny_plan({6, 4, 5});
  CHECK_THROWS_AS(validate(lopsided), argument_error);
  StackPlan plan = tiny_plan({6, 4, 6});
  plan.per_stage_specs.pop_back();
  CHECK_THROWS_AS(validate(plan), argument_error);
  plan = tiny_plan({6, 4, 6});
  plan.perturb = StackPlan::Perturb{1.5, 0.05, 1};
  CHECK_THROWS_AS(validate(plan), argument_error);
}

TEST_CASE("pretrain with one hidden layer is a plain denoiser", "[stacked]") {
  SampleSet pairs = noisy_pairs(7, 40, 1);
  StackPlan plan = tiny_plan({5}, 4);
  std::vector<StageResult> stages = pretrain(plan, pairs, pairs);
  REQUIRE(stages.size() == 1);
  CHECK(stages[0].stage_index == 1);

  AutoencoderSpec aspec;
  aspec.input_dim = 7;
  aspec.hidden_dims = {5};
  aspec.activations = {Activation::Sigmoid, Activation::Linear};
  Network want = build(aspec, mix_seed(plan.per_stage_specs[0].seed, 0));
  TrainResult direct =
      train_denoiser(want, pairs, pairs, plan.per_stage_specs[0]);
  CHECK(stages[0].net.layers[0].weights == direct.net.layers[0].weights);
  CHECK(stages[0].net.layers[1].weights == direct.net.layers[1].weights);
}

TEST_CASE("later stages autoencode the previous codes", "[stacked]") {
  SampleSet pairs = noisy_pairs(9, 50, 2);
  StackPlan plan = tiny_plan({20, 25, 20}, 3);
  std::vector<StageResult> stages = pretrain(plan, pairs, pairs);
  REQUIRE(stages.size() == 2);

  const StageResult& s2 = stages[1];
  CHECK(s2.stage_index == 2);
  REQUIRE(s2.net.layers.size() == 2);
  CHECK(s2.net.layers[0].in_dim() == 20);
  CHECK(s2.net.layers[0].out_dim() == 25);
  CHECK(s2.net.layers[1].out_dim() == 20);
  CHECK(s2.net.layers[0].activation == Activation::Sigmoid);
  CHECK(s2.net.layers[1].activation == Activation::Sigmoid);
  CHECK(s2.net.input_norm.is_identity());
  CHECK(s2.net.output_norm.is_identity());

  CHECK(stages[0].hidden_train.rows() == 20);
  CHECK(stages[0].hidden_train.cols() == 50);
  CHECK(stages[0].hidden_train.minCoeff() > 0.0);
  CHECK(stages[0].hidden_train.maxCoeff() < 1.0);
  // stage 2 consumed stage 1's codes
  Matrix want = encode(stages[0].net, pairs.corrupted);
  CHECK(stages[0].hidden_train == want);
}

TEST_CASE("assemble unfolds stages into the full stack losslessly",
          "[stacked]") {
  SampleSet pairs = noisy_pairs(8, 40, 3);
  StackPlan plan = tiny_plan({6, 4, 6}, 3);
  std::vector<StageResult> stages = pretrain(plan, pairs, pairs);
  Network net = assemble(plan, stages);

  REQUIRE(net.layers.size() == 4);
  CHECK(net.layers[0].weights == stages[0].net.layers[0].weights);
  CHECK(net.layers[1].weights == stages[1].net.layers[0].weights);
  CHECK(net.layers[2].weights == stages[1].net.layers[1].weights);
  CHECK(net.layers[3].weights == stages[0].net.layers[1].weights);
  CHECK(net.layers[0].biases == stages[0].net.layers[0].biases);
  CHECK(net.layers[3].biases == stages[0].net.layers[1].biases);
  CHECK(net.input_norm.shift == stages[0].net.input_norm.shift);
  CHECK(net.output_norm.scale == stages[0].net.output_norm.scale);
  CHECK(net.layers[3].activation == Activation::Linear);
  CHECK_NOTHROW(validate(net));
}

TEST_CASE("five hidden layers assemble as mirrored encoder/decoder chain",
          "[stacked]") {
  SampleSet pairs = noisy_pairs(10, 40, 4);
  StackPlan plan = tiny_plan({8, 6, 4, 6, 8}, 2);
  std::vector<StageResult> stages = pretrain(plan, pairs, pairs);
  REQUIRE(stages.size() == 3);
  Network net = assemble(plan, stages);
  REQUIRE(net.layers.size() == 6);
  // theta_1 theta_2 theta_3 theta_3' theta_2' theta_1'
  CHECK(net.layers[0].weights == stages[0].net.layers[0].weights);
  CHECK(net.layers[1].weights == stages[1].net.layers[0].weights);
  CHECK(net.layers[2].weights == stages[2].net.layers[0].weights);
  CHECK(net.layers[3].weights == stages[2].net.layers[1].weights);
  CHECK(net.layers[4].weights == stages[1].net.layers[1].weights);
  CHECK(net.layers[5].weights == stages[0].net.layers[1].weights);
}

TEST_CASE("single-stage assembly returns the stage net", "[stacked]") {
  SampleSet pairs = noisy_pairs(6, 30, 5);
  StackPlan plan = tiny_plan({4}, 3);
  std::vector<StageResult> stages = pretrain(plan, pairs, pairs);
  Network net = assemble(plan, stages);
  REQUIRE(net.layers.size() == 2);
  CHECK(net.layers[0].weights == stages[0].net.layers[0].weights);
  CHECK(net.layers[1].weights == stages[0].net.layers[1].weights);
}

TEST_CASE("assemble rejects inconsistent stage results", "[stacked]") {
  SampleSet pairs = noisy_pairs(8, 40, 6);
  StackPlan plan = tiny_plan({6, 4, 6}, 2);
  std::vector<StageResult> stages = pretrain(plan, pairs, pairs);

  std::vector<StageResult> missing(stages.begin(), stages.end() - 1);
  CHECK_THROWS_AS(assemble(plan, missing), assembly_error);

  std::vector<StageResult> tampered = stages;
  tampered[1].net.layers.push_back(tampered[1].net.layers.back());
  CHECK_THROWS_AS(assemble(plan, tampered), assembly_error);

  tampered = stages;
  tampered[1].net.input_norm.shift = Vector::Constant(6, 0.5);
  CHECK_THROWS_AS(assemble(plan, tampered), assembly_error);

  tampered = stages;
  tampered[1].net.layers[0].weights.resize(5, 6);
  tampered[1].net.layers[0].biases.resize(5);
  CHECK_THROWS_AS(assemble(plan, tampered), assembly_error);
}

TEST_CASE("perturb_weights nudges exactly the requested share", "[stacked]") {
  Network net;
  DenseLayer layer;
  layer.weights = random_matrix(10, 10, 7, 0.5, 1.5);  // 100 weights, no zeros
  layer.biases = random_vector(10, 8);
  layer.activation = Activation::Sigmoid;
  net.layers = {layer, layer};
  net.layers[1].activation = Activation::Linear;
  net.input_norm = FeatureAffine::identity(10);
  net.output_norm = FeatureAffine::identity(10);

  Network out = perturb_weights(net, 0.1, 0.05, 99);
  for (std::size_t l = 0; l < 2; ++l) {
    Index changed = 0;
    for (Index i = 0; i < 100; ++i) {
      double before = net.layers[l].weights(i);
      double after = out.layers[l].weights(i);
      if (after != before) {
        ++changed;
        CHECK(std::abs(after - before) <= 0.05 * std::abs(before) + 1e-15);
        CHECK(after != 0.0);
      }
    }
    CHECK(changed == 10);  // ceil(0.1 * 100)
    CHECK(out.layers[l].biases == net.layers[l].biases);
  }

  Network same_seed = perturb_weights(net, 0.1, 0.05, 99);
  CHECK(same_seed.layers[0].weights == out.layers[0].weights);
  Network other_seed = perturb_weights(net, 0.1, 0.05, 100);
  CHECK(other_seed.layers[0].weights != out.layers[0].weights);
}

TEST_CASE("perturb_weights edge fractions", "[stacked]") {
  Network net = testutil::random_net({5, 4, 5}, 9);
  Network zero_frac = perturb_weights(net, 0.0, 0.05, 1);
  Network zero_mag = perturb_weights(net, 0.3, 0.0, 1);
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    CHECK(zero_frac.layers[l].weights == net.layers[l].weights);
    CHECK(zero_mag.layers[l].weights == net.layers[l].weights);
  }
  // fraction 1 touches every weight
  Network all = perturb_weights(net, 1.0, 0.5, 2);
  Index untouched = 0;
  for (Index i = 0; i < net.layers[0].weights.size(); ++i)
    if (all.layers[0].weights(i) == net.layers[0].weights(i)) ++untouched;
  CHECK(untouched == 0);
  CHECK_THROWS_AS(perturb_weights(net, -0.1, 0.05, 1), argument_error);
  CHECK_THROWS_AS(perturb_weights(net, 0.1, -0.05, 1), argument_error);
}

TEST_CASE("stage count is (n+1)/2 across depths", "[stacked]") {
  SampleSet pairs = noisy_pairs(6, 24, 10);
  for (Index n : {1, 3, 5, 7}) {
    std::vector<Index> hidden(std::size_t(n), 5);
    StackPlan plan = tiny_plan(hidden, 1, 1);
    std::vector<StageResult> stages = pretrain(plan, pairs, pairs);
    CHECK(Index(stages.size()) == (n + 1) / 2);
    Network net = assemble(plan, stages);
    CHECK(Index(net.layers.size()) == n + 1);
  }
}

TEST_CASE("warm start beats random initialization at epoch zero",
          "[stacked][property]") {
  // Desk-scale field-survey task: assembled stacks should start fine-tuning
  // from a better place than a cold Glorot net, in the median over seeds.
  Index better = 0, seeds = 10;
  for (std::uint64_t seed = 0; seed < std::uint64_t(seeds); ++seed) {
    SampleSet full = make_sp_samples(400, 260, 0.5, 0.5, mix_seed(1000, seed));
    auto [train_set, valid_set] = split_train_valid(full, 0.25, seed);

    StackPlan plan = tiny_plan({10, 6, 10}, 60);
    for (TrainSpec& s : plan.per_stage_specs) {
      s.seed = mix_seed(seed, s.seed);
      s.learning_rate = 0.1;
    }
    std::vector<StageResult> stages = pretrain(plan, train_set, valid_set);
    Network warm = assemble(plan, stages);

    AutoencoderSpec aspec;
    aspec.input_dim = 17;
    aspec.hidden_dims = {10, 6, 10};
    Network cold = build(aspec, mix_seed(seed, 77));
    fit_normalization(cold, train_set);

    double warm_loss = loss_mse(valid_set.clean, forward(warm, valid_set.corrupted));
    double cold_loss = loss_mse(valid_set.clean, forward(cold, valid_set.corrupted));
    if (warm_loss < cold_loss) ++better;
  }
  CHECK(2 * better > seeds);  // strict majority = median improvement
}
