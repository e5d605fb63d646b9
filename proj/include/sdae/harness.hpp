#ifndef SDAE_HARNESS_HPP
#define SDAE_HARNESS_HPP

#include "sdae/autoencoder.hpp"
#include "sdae/config.hpp"
#include "sdae/datagen.hpp"
#include "sdae/io.hpp"
#include "sdae/metrics.hpp"
#include "sdae/stacked.hpp"
#include "sdae/windowing.hpp"

#include <filesystem>

// End-to-end run directory layout shared by the CLI commands:
//
//   out/
//     config.cfg                    resolved config (written by generate)
//     dataset/train.ds  valid.ds
//     dataset/test.ds + test.csv            (math, sp)
//     dataset/test_section.ds + .csv        (seismic)
//     dataset/test_suite.ds + .csv          (well)
//     model.net, history.csv                (train)
//     model_stage<k>.net, history_stage<k>.csv   (stacked variants)
//     eval/report.kv, per_sample.csv, outputs.ds
//     denoise/corrected.ds, corrected.csv, report.kv
//     plots/...
//
// Dataset files for 2-D targets store columns as the physical units (seismic
// traces, well logs), so a loaded clean/corrupted matrix is the section
// itself. Relative paths in [denoise] resolve against the out directory.

namespace sdae {

namespace fs = std::filesystem;

enum class Command : std::uint8_t {
  Generate,
  Train,
  Evaluate,
  Denoise,
  ExportPlots
};

namespace detail {

// Seed stream tags; any fixed distinct values work, these never change.
constexpr std::uint64_t seed_split = 0x5137;
constexpr std::uint64_t seed_test = 0x7e57;
constexpr std::uint64_t seed_test_corrupt = 0x7e58;
constexpr std::uint64_t seed_build = 0xb01d;
constexpr std::uint64_t seed_stage = 0x57a6e0;
constexpr std::uint64_t seed_perturb = 0x9e27;

inline fs::path resolve(const fs::path& out, const std::string& p) {
  fs::path q(p);
  return q.is_absolute() ? q : out / q;
}

inline void require_artifacts(const std::vector<fs::path>& paths,
                              const std::string& hint) {
  std::string missing;
  for (const fs::path& p : paths)
    if (!fs::exists(p)) missing += "\n  " + p.string();
  if (!missing.empty())
    throw io_error("missing artifacts:" + missing + "\n" + hint);
}

inline Index expected_input_dim(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case ExperimentKind::Math: return process_t_grid().size();
    case ExperimentKind::SP: return sp_r_grid().size();
    case ExperimentKind::Seismic:
      return cfg.dataset.patch_rows * cfg.dataset.cols;
    case ExperimentKind::Well: return cfg.dataset.window_m * well_log_count;
  }
  return 0;
}

inline bool vector_experiment(ExperimentKind k) {
  return k == ExperimentKind::Math || k == ExperimentKind::SP;
}

inline SeismicGenParams seismic_params(const DatasetConfig& d) {
  SeismicGenParams p;
  p.rows = d.rows;
  p.cols = d.cols;
  p.dt = d.dt;
  p.wavelet_hz = d.wavelet_hz;
  p.reflectors = d.reflectors;
  p.max_dip = d.max_dip;
  p.fmin = d.fmin;
  p.fmax = d.fmax;
  p.corrupt_min = d.corrupt_min;
  p.corrupt_max = d.corrupt_max;
  return p;
}

inline fs::path test_set_path(const ExperimentConfig& cfg, const fs::path& out) {
  switch (cfg.experiment) {
    case ExperimentKind::Seismic: return out / "dataset" / "test_section.ds";
    case ExperimentKind::Well: return out / "dataset" / "test_suite.ds";
    default: return out / "dataset" / "test.ds";
  }
}

}  // namespace detail

inline void cmd_generate(const ExperimentConfig& cfg, const fs::path& out) {
  const DatasetConfig& d = cfg.dataset;
  fs::create_directories(out / "dataset");
  detail::write_file(out / "config.cfg", serialize_config(cfg));

  SampleSet full;
  switch (cfg.experiment) {
    case ExperimentKind::Math:
      full = make_math_samples(
          d.samples, Index(std::llround(d.noisy_fraction * double(d.samples))),
          d.noise_level, d.seed);
      break;
    case ExperimentKind::SP:
      full = make_sp_samples(
          d.samples, Index(std::llround(d.noisy_fraction * double(d.samples))),
          d.noise_level, d.unit_fraction, d.seed);
      break;
    case ExperimentKind::Seismic:
      full = make_seismic_patches(
          detail::seismic_params(d), d.patch_rows, d.samples,
          Index(std::llround(d.noisy_fraction * double(d.samples))), d.seed);
      break;
    case ExperimentKind::Well:
      full = make_well_images(well_ranges(parse_well_source(d.well_row)),
                              RockPhysics{}, d.suites, d.suite_length,
                              d.variants, d.window_m, d.samples, d.seed);
      break;
  }

  if (full.count() == 0) {
    save_sample_set(full, out / "dataset" / "train.ds");
    save_sample_set(full, out / "dataset" / "valid.ds");
  } else {
    auto [train_set, valid_set] = split_train_valid(
        full, d.valid_fraction, mix_seed(d.seed, detail::seed_split));
    save_sample_set(train_set, out / "dataset" / "train.ds");
    save_sample_set(valid_set, out / "dataset" / "valid.ds");
  }

  switch (cfg.experiment) {
    case ExperimentKind::Math: {
      SampleSet test = make_math_test(d.test_samples, d.test_noise_min,
                                      d.test_noise_max,
                                      mix_seed(d.seed, detail::seed_test));
      save_sample_set(test, out / "dataset" / "test.ds");
      write_sample_set_csv(test, out / "dataset" / "test.csv");
      break;
    }
    case ExperimentKind::SP: {
      SampleSet test = make_sp_test(d.test_samples, d.noise_level,
                                    d.unit_fraction,
                                    mix_seed(d.seed, detail::seed_test));
      save_sample_set(test, out / "dataset" / "test.ds");
      write_sample_set_csv(test, out / "dataset" / "test.csv");
      break;
    }
    case ExperimentKind::Seismic: {
      SectionPair pair =
          make_section_pair(detail::seismic_params(d), d.test_corrupt,
                            mix_seed(d.seed, detail::seed_test));
      SampleSet stored;
      stored.clean = pair.clean.amplitudes;
      stored.corrupted = pair.corrupted.amplitudes;
      stored.noisy.assign(std::size_t(d.cols), 0);
      for (Index c : pair.corrupt_cols) stored.noisy[std::size_t(c)] = 1;
      save_sample_set(stored, out / "dataset" / "test_section.ds");
      write_matrix_csv(stored.corrupted, out / "dataset" / "test_section.csv");
      break;
    }
    case ExperimentKind::Well: {
      WellLogSuite suite =
          synth_well_suite(well_ranges(parse_well_source(d.well_row)), 1,
                           d.test_suite_length, 0.2, RockPhysics{},
                           mix_seed(d.seed, detail::seed_test))
              .front();
      WellLogSuite corrupted = corrupt_well_log(
          suite, well_log_index(d.test_log), parse_well_mode(d.test_mode),
          d.test_fraction, d.test_contiguous,
          mix_seed(d.seed, detail::seed_test_corrupt));
      SampleSet stored;
      stored.clean = suite.clean;
      stored.corrupted = corrupted.corrupted;
      stored.noisy.assign(std::size_t(well_log_count), 0);
      for (Index j = 0; j < well_log_count; ++j)
        if (corrupted.mask.col(j).sum() > 0) stored.noisy[std::size_t(j)] = 1;
      save_sample_set(stored, out / "dataset" / "test_suite.ds");
      write_matrix_csv(stored.corrupted, out / "dataset" / "test_suite.csv");
      break;
    }
  }
}

namespace detail {

inline TrainSpec base_train_spec(const ExperimentConfig& cfg) {
  TrainSpec s;
  s.learning_rate = cfg.train.learning_rate;
  s.max_epochs = int(cfg.train.max_epochs);
  s.batch_size = int(cfg.train.batch_size);
  s.l2_lambda = cfg.network.lambda;
  s.sparsity = cfg.network.sparsity;
  s.seed = cfg.train.seed;
  s.early_stop_patience = int(cfg.train.patience);
  return s;
}

inline StackPlan stack_plan(const ExperimentConfig& cfg) {
  StackPlan plan;
  plan.hidden_dims = cfg.network.hidden;
  const Index n_layers = Index(cfg.network.hidden.size()) + 1;
  for (Index k = 1; k <= stage_count(plan); ++k) {
    TrainSpec s = base_train_spec(cfg);
    s.sparsity.reset();  // sparsity applies to the assembled net only
    s.max_epochs = int(cfg.train.stage_epochs.value_or(cfg.train.max_epochs / 2));
    s.early_stop_patience =
        int(cfg.train.stage_patience.value_or(cfg.train.patience));
    if (cfg.train.stage_learning_rate)
      s.learning_rate = *cfg.train.stage_learning_rate;
    if (!cfg.network.lambda.empty())
      s.l2_lambda = {cfg.network.lambda[std::size_t(k - 1)],
                     cfg.network.lambda[std::size_t(n_layers - k)]};
    s.seed = mix_seed(cfg.train.seed, seed_stage + std::uint64_t(k));
    plan.per_stage_specs.push_back(s);
  }
  plan.finetune_spec = base_train_spec(cfg);
  if (cfg.network.kind == NetworkKind::SDAR)
    plan.perturb = StackPlan::Perturb{
        cfg.train.perturb_fraction, cfg.train.perturb_magnitude,
        mix_seed(cfg.train.seed, seed_perturb)};
  return plan;
}

}  // namespace detail

inline void cmd_train(const ExperimentConfig& cfg, const fs::path& out) {
  detail::require_artifacts(
      {out / "dataset" / "train.ds", out / "dataset" / "valid.ds"},
      "run the generate command first");
  SampleSet train_set = load_sample_set(out / "dataset" / "train.ds");
  SampleSet valid_set = load_sample_set(out / "dataset" / "valid.ds");
  const Index dim = detail::expected_input_dim(cfg);
  if (train_set.dim() != dim)
    throw config_error("train: dataset dimension " +
                       std::to_string(train_set.dim()) +
                       " does not match the configured geometry (" +
                       std::to_string(dim) + ")");
  if (valid_set.dim() != train_set.dim())
    throw config_error("train: train/valid dimension mismatch");

  Network net;
  std::vector<EpochStats> history;
  if (cfg.network.kind == NetworkKind::SA ||
      cfg.network.kind == NetworkKind::DA) {
    AutoencoderSpec aspec;
    aspec.input_dim = dim;
    aspec.hidden_dims = cfg.network.hidden;
    Network fresh =
        build(aspec, mix_seed(cfg.train.seed, detail::seed_build));
    TrainResult r = train_denoiser(std::move(fresh), train_set, valid_set,
                                   detail::base_train_spec(cfg));
    net = std::move(r.net);
    history = std::move(r.history);
  } else {
    StackPlan plan = detail::stack_plan(cfg);
    std::vector<StageResult> stages = pretrain(plan, train_set, valid_set);
    for (const StageResult& st : stages) {
      const std::string tag = "_stage" + std::to_string(st.stage_index);
      save_network(st.net, out / ("model" + tag + ".net"));
      write_history_csv(st.history, out / ("history" + tag + ".csv"));
    }
    Network stacked = assemble(plan, stages);
    if (plan.perturb)
      stacked = perturb_weights(stacked, plan.perturb->fraction,
                                plan.perturb->magnitude, plan.perturb->seed);
    TrainResult r =
        finetune(std::move(stacked), train_set, valid_set, plan.finetune_spec);
    net = std::move(r.net);
    history = std::move(r.history);
  }
  save_network(net, out / "model.net");
  write_history_csv(history, out / "history.csv");
}

namespace detail {

inline EnsembleSpec effective_ensemble(const ExperimentConfig& cfg) {
  if (cfg.denoise) return *cfg.denoise;
  EnsembleSpec e;
  e.models = {"model.net"};
  e.weights = {1.0};
  e.stride = 1;
  switch (cfg.experiment) {
    case ExperimentKind::Seismic:
      e.window_rows = {cfg.dataset.patch_rows};
      e.input = "dataset/test_section.ds";
      break;
    case ExperimentKind::Well:
      e.window_rows = {cfg.dataset.window_m};
      e.input = "dataset/test_suite.ds";
      break;
    default:
      e.window_rows = {1};  // not used by vector experiments
      e.input = "dataset/test.ds";
      break;
  }
  return e;
}

struct DenoiseOutcome {
  SampleSet input;  // clean + corrupted (columns = samples/traces/logs)
  Matrix combined;
  std::vector<Matrix> per_model;
};

inline DenoiseOutcome run_ensemble(const ExperimentConfig& cfg,
                                   const fs::path& out) {
  EnsembleSpec e = effective_ensemble(cfg);
  validate(e);
  const fs::path in_path = resolve(out, e.input);
  std::vector<fs::path> needed{in_path};
  for (const std::string& m : e.models) needed.push_back(resolve(out, m));
  require_artifacts(needed, "run the generate and train commands first");

  DenoiseOutcome oc;
  oc.input = load_sample_set(in_path);
  oc.combined = Matrix::Zero(oc.input.clean.rows(), oc.input.clean.cols());
  for (std::size_t i = 0; i < e.models.size(); ++i) {
    Network net = load_network(resolve(out, e.models[i]));
    Matrix y;
    if (vector_experiment(cfg.experiment)) {
      if (net.in_dim() != oc.input.dim())
        throw config_error("denoise: model " + e.models[i] + " expects " +
                           std::to_string(net.in_dim()) +
                           " inputs, dataset has " +
                           std::to_string(oc.input.dim()));
      y = forward(net, oc.input.corrupted);
    } else {
      WindowSpec w{e.window_rows[i], oc.input.clean.cols(), e.stride};
      y = denoise_section(oc.input.corrupted, w, net);
    }
    oc.combined += e.weights[i] * y;
    oc.per_model.push_back(std::move(y));
  }
  return oc;
}

}  // namespace detail

inline void cmd_evaluate(const ExperimentConfig& cfg, const fs::path& out) {
  detail::DenoiseOutcome oc = detail::run_ensemble(cfg, out);
  fs::create_directories(out / "eval");
  EvalReport rep =
      evaluate_set(oc.input.clean, oc.input.corrupted, oc.combined);
  write_report_kv(rep, out / "eval" / "report.kv");
  write_per_sample_csv(rep, out / "eval" / "per_sample.csv");
  SampleSet outputs;  // corrupted slot holds the network output
  outputs.clean = oc.input.clean;
  outputs.corrupted = oc.combined;
  outputs.noisy = oc.input.noisy;
  save_sample_set(outputs, out / "eval" / "outputs.ds");
  if (oc.per_model.size() > 1)
    for (std::size_t i = 0; i < oc.per_model.size(); ++i) {
      EvalReport mr =
          evaluate_set(oc.input.clean, oc.input.corrupted, oc.per_model[i]);
      write_report_kv(mr, out / "eval" /
                              ("report_model" + std::to_string(i + 1) + ".kv"));
    }
}

inline void cmd_denoise(const ExperimentConfig& cfg, const fs::path& out) {
  detail::DenoiseOutcome oc = detail::run_ensemble(cfg, out);
  fs::create_directories(out / "denoise");
  SampleSet corrected;
  corrected.clean = oc.input.clean;
  corrected.corrupted = oc.combined;
  corrected.noisy = oc.input.noisy;
  save_sample_set(corrected, out / "denoise" / "corrected.ds");
  write_matrix_csv(oc.combined, out / "denoise" / "corrected.csv");
  EvalReport rep =
      evaluate_set(oc.input.clean, oc.input.corrupted, oc.combined);
  write_report_kv(rep, out / "denoise" / "report.kv");
}

inline void cmd_export_plots(const ExperimentConfig& cfg, const fs::path& out) {
  const fs::path plots = out / "plots";
  if (detail::vector_experiment(cfg.experiment)) {
    const fs::path test_path = out / "dataset" / "test.ds";
    const fs::path out_path = out / "eval" / "outputs.ds";
    detail::require_artifacts({test_path, out_path},
                              "run the generate, train and evaluate commands "
                              "first");
    SampleSet test = load_sample_set(test_path);
    SampleSet outputs = load_sample_set(out_path);
    if (outputs.dim() != test.dim() || outputs.count() != test.count())
      throw io_error("export-plots: eval outputs do not match the test set");
    fs::create_directories(plots);

    EvalReport rep =
        evaluate_set(test.clean, test.corrupted, outputs.corrupted);
    std::string scatter = "index,eta,ratio\n";
    for (Index j = 0; j < test.count(); ++j)
      scatter += std::to_string(j) + "," +
                 detail::fmt(rep.per_sample_eta[std::size_t(j)]) + "," +
                 detail::fmt(rep.per_sample_ratio[std::size_t(j)]) + "\n";
    detail::write_file(plots / "eta_scatter.csv", scatter);

    const Vector& grid = cfg.experiment == ExperimentKind::Math
                             ? process_t_grid()
                             : sp_r_grid();
    std::vector<Index> picks{0, test.count() / 2, test.count() - 1};
    picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
    for (Index j : picks) {
      std::string buf = "grid,clean,noisy,denoised\n";
      for (Index i = 0; i < test.dim(); ++i)
        buf += detail::fmt(grid[i]) + "," + detail::fmt(test.clean(i, j)) +
               "," + detail::fmt(test.corrupted(i, j)) + "," +
               detail::fmt(outputs.corrupted(i, j)) + "\n";
      detail::write_file(plots / ("sample_" + std::to_string(j) + ".csv"),
                         buf);
    }
    return;
  }

  const fs::path test_path = detail::test_set_path(cfg, out);
  const fs::path corrected_path = out / "denoise" / "corrected.ds";
  detail::require_artifacts(
      {test_path, corrected_path},
      "run the generate, train and denoise commands first");
  SampleSet section = load_sample_set(test_path);
  SampleSet corrected = load_sample_set(corrected_path);
  if (corrected.clean.rows() != section.clean.rows() ||
      corrected.clean.cols() != section.clean.cols())
    throw io_error("export-plots: corrected output does not match the input");
  fs::create_directories(plots);

  if (cfg.experiment == ExperimentKind::Seismic) {
    write_matrix_csv(section.clean, plots / "section_clean.csv");
    write_matrix_csv(section.corrupted, plots / "section_noisy.csv");
    write_matrix_csv(corrected.corrupted, plots / "section_corrected.csv");
    write_matrix_csv(Matrix(corrected.corrupted - section.clean),
                     plots / "section_residual.csv");
    return;
  }

  static const char* log_names[] = {"phi", "vsh", "sh", "vp"};
  std::string buf = "depth";
  for (const char* n : log_names) {
    buf += std::string(",") + n + "_clean," + n + "_noisy," + n + "_denoised";
  }
  buf += "\n";
  for (Index i = 0; i < section.clean.rows(); ++i) {
    buf += std::to_string(i);
    for (Index j = 0; j < well_log_count; ++j)
      buf += "," + detail::fmt(section.clean(i, j)) + "," +
             detail::fmt(section.corrupted(i, j)) + "," +
             detail::fmt(corrected.corrupted(i, j));
    buf += "\n";
  }
  detail::write_file(plots / "logs.csv", buf);
}

inline void run_command(Command cmd, ExperimentConfig cfg, const fs::path& out,
                        std::optional<std::uint64_t> seed_override) {
  if (seed_override) {
    cfg.dataset.seed = *seed_override;
    cfg.train.seed = *seed_override;
  }
  validate_config(cfg);
  fs::create_directories(out);
  switch (cmd) {
    case Command::Generate: cmd_generate(cfg, out); break;
    case Command::Train: cmd_train(cfg, out); break;
    case Command::Evaluate: cmd_evaluate(cfg, out); break;
    case Command::Denoise: cmd_denoise(cfg, out); break;
    case Command::ExportPlots: cmd_export_plots(cfg, out); break;
  }
}

}  // namespace sdae

#endif
