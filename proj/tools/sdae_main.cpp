// Command-line front end: generate / train / evaluate / denoise /
// export-plots over a run directory. Exit codes: 0 ok, 2 bad config,
// 3 numeric divergence, 4 I/O failure, 1 anything else.

#include "sdae/sdae.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <map>

namespace {

struct Args {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, Args& args) {
  sub->add_option("--config", args.config, "experiment config file")
      ->required();
  sub->add_option("--out", args.out, "run directory")->required();
  sub->add_option_function<std::int64_t>(
      "--seed",
      [&args](std::int64_t v) { args.seed = std::uint64_t(v); },
      "override the dataset and training seeds");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stacked denoising autoencoders for geophysical signals"};
  app.require_subcommand(1);

  struct Entry {
    const char* name;
    const char* help;
    sdae::Command cmd;
  };
  const Entry entries[] = {
      {"generate", "synthesize train/valid/test datasets",
       sdae::Command::Generate},
      {"train", "train the configured network on a generated dataset",
       sdae::Command::Train},
      {"evaluate", "score a trained model on the test data",
       sdae::Command::Evaluate},
      {"denoise", "write the corrected signal for the test data",
       sdae::Command::Denoise},
      {"export-plots", "dump plot-ready CSV views of a finished run",
       sdae::Command::ExportPlots},
  };

  Args args;
  std::map<const CLI::App*, sdae::Command> dispatch;
  for (const Entry& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_common(sub, args);
    dispatch[sub] = e.cmd;
  }

  CLI11_PARSE(app, argc, argv);

  try {
    sdae::ExperimentConfig cfg = sdae::load_config(args.config);
    sdae::run_command(dispatch.at(app.get_subcommands().front()), cfg,
                      args.out, args.seed);
  } catch (const sdae::config_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const sdae::numeric_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const sdae::io_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
