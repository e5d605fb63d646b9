#ifndef SDAE_CONFIG_HPP
#define SDAE_CONFIG_HPP

#include "sdae/core.hpp"
#include "sdae/datagen.hpp"
#include "sdae/io.hpp"

#include <charconv>
#include <set>
#include <sstream>

namespace sdae {

enum class ExperimentKind : std::uint8_t { Math, SP, Seismic, Well };
enum class NetworkKind : std::uint8_t { SA, DA, SDA, SDAR };

inline const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Math: return "math";
    case ExperimentKind::SP: return "sp";
    case ExperimentKind::Seismic: return "seismic";
    case ExperimentKind::Well: return "well";
  }
  return "?";
}

inline const char* to_string(NetworkKind k) {
  switch (k) {
    case NetworkKind::SA: return "sa";
    case NetworkKind::DA: return "da";
    case NetworkKind::SDA: return "sda";
    case NetworkKind::SDAR: return "sdar";
  }
  return "?";
}

// [dataset] parameters. One struct for all four experiments; the parser and
// serializer only admit the keys that belong to the configured experiment.
struct DatasetConfig {
  Index samples = 0;  // vector samples / seismic patches / well images
  double noisy_fraction = 0.5;
  double valid_fraction = 0.2;
  std::uint64_t seed = 1;

  // math + sp
  double noise_level = 0.25;
  Index test_samples = 100;
  double test_noise_min = 0.10;  // math test levels
  double test_noise_max = 0.25;
  double unit_fraction = 0.5;  // sp: fraction of grid points hit per sample

  // seismic
  Index rows = 99;
  Index cols = 42;
  double dt = 0.002;
  double wavelet_hz = 40.0;
  Index reflectors = 12;
  double max_dip = 0.15;
  double fmin = 100.0;
  double fmax = 220.0;
  Index corrupt_min = 4;
  Index corrupt_max = 10;
  Index patch_rows = 9;
  Index test_corrupt = 7;

  // well
  std::string well_row = "synthetic1";
  Index suites = 50;
  Index suite_length = 120;
  Index variants = 7;  // corrupted copies per clean suite
  Index window_m = 3;
  Index test_suite_length = 240;
  double test_fraction = 0.25;
  std::string test_log = "sh";
  std::string test_mode = "mute";
  bool test_contiguous = true;

  bool operator==(const DatasetConfig&) const = default;
};

struct NetworkConfig {
  NetworkKind kind = NetworkKind::DA;
  std::vector<Index> hidden;
  std::vector<double> lambda;  // per weight matrix; empty = zeros
  std::optional<SparsitySpec> sparsity;

  bool operator==(const NetworkConfig& o) const {
    auto spars = [](const std::optional<SparsitySpec>& s) {
      return s ? std::tuple(true, s->target_activation, s->weight, s->layer_index)
               : std::tuple(false, 0.0, 0.0, 0);
    };
    return kind == o.kind && hidden == o.hidden && lambda == o.lambda &&
           spars(sparsity) == spars(o.sparsity);
  }
};

struct TrainConfig {
  double learning_rate = 0.05;
  Index batch_size = 64;
  Index max_epochs = 1000;
  Index patience = 200;
  std::uint64_t seed = 7;
  std::optional<Index> stage_epochs;     // default: max_epochs / 2
  std::optional<Index> stage_patience;   // default: patience
  std::optional<double> stage_learning_rate;
  double perturb_fraction = 0.1;   // sdar only
  double perturb_magnitude = 0.05;

  bool operator==(const TrainConfig&) const = default;
};

// [denoise]: model ensemble applied to a stored section/suite. Paths resolve
// against the run's --out directory.
struct EnsembleSpec {
  std::vector<std::string> models;
  std::vector<double> weights;
  std::vector<Index> window_rows;  // one per model
  Index stride = 1;
  std::string input;  // dataset-format section pair

  bool operator==(const EnsembleSpec&) const = default;
};

inline void validate(const EnsembleSpec& e) {
  if (e.models.empty()) throw config_error("denoise: no models listed");
  if (e.weights.size() != e.models.size() ||
      e.window_rows.size() != e.models.size())
    throw config_error("denoise: models, weights and window_rows must align");
  double sum = 0.0;
  for (double w : e.weights) {
    if (w < 0.0) throw config_error("denoise: weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw config_error("denoise: weights must sum to 1");
  for (Index m : e.window_rows)
    if (m < 1) throw config_error("denoise: window_rows must be positive");
  if (e.stride < 1) throw config_error("denoise: stride must be >= 1");
  if (e.input.empty()) throw config_error("denoise: input path missing");
}

struct ExperimentConfig {
  int schema_version = 1;
  ExperimentKind experiment = ExperimentKind::Math;
  DatasetConfig dataset;
  NetworkConfig network;
  TrainConfig train;
  std::optional<EnsembleSpec> denoise;

  bool operator==(const ExperimentConfig&) const = default;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

inline double to_double(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw config_error("config: value '" + s + "' for key '" + key +
                       "' is not a number");
  }
}

inline long long to_int(const std::string& s, const std::string& key) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw config_error("config: value '" + s + "' for key '" + key +
                       "' is not an integer");
  return v;
}

inline std::uint64_t to_seed(const std::string& s, const std::string& key) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw config_error("config: value '" + s + "' for key '" + key +
                       "' is not a seed");
  return v;
}

inline bool to_bool(const std::string& s, const std::string& key) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw config_error("config: value '" + s + "' for key '" + key +
                     "' is not a boolean");
}

}  // namespace detail

inline ExperimentKind parse_experiment_kind(const std::string& s) {
  if (s == "math") return ExperimentKind::Math;
  if (s == "sp") return ExperimentKind::SP;
  if (s == "seismic") return ExperimentKind::Seismic;
  if (s == "well") return ExperimentKind::Well;
  throw config_error("config: unknown experiment '" + s + "'");
}

inline NetworkKind parse_network_kind(const std::string& s) {
  if (s == "sa") return NetworkKind::SA;
  if (s == "da") return NetworkKind::DA;
  if (s == "sda") return NetworkKind::SDA;
  if (s == "sdar") return NetworkKind::SDAR;
  throw config_error("config: unknown network kind '" + s + "'");
}

inline WellSource parse_well_source(const std::string& s) {
  if (s == "synthetic1") return WellSource::Synthetic1;
  if (s == "kg_basin") return WellSource::KGBasin;
  if (s == "mt_elbert") return WellSource::MtElbert;
  throw config_error("config: unknown well row '" + s + "'");
}

inline Index well_log_index(const std::string& s) {
  if (s == "phi") return 0;
  if (s == "vsh") return 1;
  if (s == "sh") return 2;
  if (s == "vp") return 3;
  throw config_error("config: unknown log name '" + s + "'");
}

inline WellCorruptMode parse_well_mode(const std::string& s) {
  if (s == "mute") return WellCorruptMode::Mute;
  if (s == "noise") return WellCorruptMode::Noise;
  throw config_error("config: unknown corruption mode '" + s + "'");
}

namespace detail {

inline const std::set<std::string>& dataset_keys(ExperimentKind k) {
  static const std::set<std::string> math{
      "samples", "noisy_fraction", "valid_fraction", "seed", "noise_level",
      "test_samples", "test_noise_min", "test_noise_max"};
  static const std::set<std::string> sp{
      "samples", "noisy_fraction", "valid_fraction", "seed", "noise_level",
      "test_samples", "unit_fraction"};
  static const std::set<std::string> seismic{
      "samples", "noisy_fraction", "valid_fraction", "seed", "rows", "cols",
      "dt", "wavelet_hz", "reflectors", "max_dip", "fmin", "fmax",
      "corrupt_min", "corrupt_max", "patch_rows", "test_corrupt"};
  static const std::set<std::string> well{
      "samples", "valid_fraction", "seed", "well_row", "suites",
      "suite_length", "variants", "window_m", "test_suite_length",
      "test_fraction", "test_log", "test_mode", "test_contiguous"};
  switch (k) {
    case ExperimentKind::Math: return math;
    case ExperimentKind::SP: return sp;
    case ExperimentKind::Seismic: return seismic;
    case ExperimentKind::Well: return well;
  }
  return math;
}

}  // namespace detail

inline ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  bool saw_schema = false, saw_experiment = false;
  std::string section;
  std::set<std::string> seen;  // "<section>/<key>" duplicates rejected
  SparsitySpec sparsity;
  bool has_sparsity = false;
  EnsembleSpec ensemble;
  bool has_ensemble = false;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::string where = " (line " + std::to_string(line_no) + ")";

    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error("config: malformed section header" + where);
      section = line.substr(1, line.size() - 2);
      if (section != "dataset" && section != "network" && section != "train" &&
          section != "denoise")
        throw config_error("config: unknown section '" + section + "'" + where);
      continue;
    }

    std::vector<std::string> tok = detail::tokens(line);
    const std::string& key = tok[0];
    std::vector<std::string> val(tok.begin() + 1, tok.end());
    if (val.empty())
      throw config_error("config: key '" + key + "' has no value" + where);
    if (!seen.insert(section + "/" + key).second)
      throw config_error("config: duplicate key '" + key + "'" + where);
    auto one = [&]() -> const std::string& {
      if (val.size() != 1)
        throw config_error("config: key '" + key + "' expects one value" +
                           where);
      return val[0];
    };

    if (section.empty()) {
      if (key == "schema_version") {
        long long v = detail::to_int(one(), key);
        if (v != 1)
          throw config_error("config: unsupported schema_version " +
                             std::to_string(v));
        cfg.schema_version = int(v);
        saw_schema = true;
      } else if (key == "experiment") {
        cfg.experiment = parse_experiment_kind(one());
        saw_experiment = true;
      } else {
        throw config_error("config: unknown top-level key '" + key + "'" +
                           where);
      }
      continue;
    }
    if (!saw_experiment)
      throw config_error("config: 'experiment' must precede sections" + where);

    if (section == "dataset") {
      if (!detail::dataset_keys(cfg.experiment).count(key))
        throw config_error("config: key '" + key +
                           "' not valid in [dataset] for experiment '" +
                           std::string(to_string(cfg.experiment)) + "'" + where);
      DatasetConfig& d = cfg.dataset;
      if (key == "samples") d.samples = detail::to_int(one(), key);
      else if (key == "noisy_fraction") d.noisy_fraction = detail::to_double(one(), key);
      else if (key == "valid_fraction") d.valid_fraction = detail::to_double(one(), key);
      else if (key == "seed") d.seed = detail::to_seed(one(), key);
      else if (key == "noise_level") d.noise_level = detail::to_double(one(), key);
      else if (key == "test_samples") d.test_samples = detail::to_int(one(), key);
      else if (key == "test_noise_min") d.test_noise_min = detail::to_double(one(), key);
      else if (key == "test_noise_max") d.test_noise_max = detail::to_double(one(), key);
      else if (key == "unit_fraction") d.unit_fraction = detail::to_double(one(), key);
      else if (key == "rows") d.rows = detail::to_int(one(), key);
      else if (key == "cols") d.cols = detail::to_int(one(), key);
      else if (key == "dt") d.dt = detail::to_double(one(), key);
      else if (key == "wavelet_hz") d.wavelet_hz = detail::to_double(one(), key);
      else if (key == "reflectors") d.reflectors = detail::to_int(one(), key);
      else if (key == "max_dip") d.max_dip = detail::to_double(one(), key);
      else if (key == "fmin") d.fmin = detail::to_double(one(), key);
      else if (key == "fmax") d.fmax = detail::to_double(one(), key);
      else if (key == "corrupt_min") d.corrupt_min = detail::to_int(one(), key);
      else if (key == "corrupt_max") d.corrupt_max = detail::to_int(one(), key);
      else if (key == "patch_rows") d.patch_rows = detail::to_int(one(), key);
      else if (key == "test_corrupt") d.test_corrupt = detail::to_int(one(), key);
      else if (key == "well_row") { parse_well_source(one()); d.well_row = one(); }
      else if (key == "suites") d.suites = detail::to_int(one(), key);
      else if (key == "suite_length") d.suite_length = detail::to_int(one(), key);
      else if (key == "variants") d.variants = detail::to_int(one(), key);
      else if (key == "window_m") d.window_m = detail::to_int(one(), key);
      else if (key == "test_suite_length") d.test_suite_length = detail::to_int(one(), key);
      else if (key == "test_fraction") d.test_fraction = detail::to_double(one(), key);
      else if (key == "test_log") { well_log_index(one()); d.test_log = one(); }
      else if (key == "test_mode") { parse_well_mode(one()); d.test_mode = one(); }
      else if (key == "test_contiguous") d.test_contiguous = detail::to_bool(one(), key);
      continue;
    }

    if (section == "network") {
      if (key == "kind") cfg.network.kind = parse_network_kind(one());
      else if (key == "hidden") {
        for (const std::string& v : val)
          cfg.network.hidden.push_back(detail::to_int(v, key));
      } else if (key == "lambda") {
        for (const std::string& v : val)
          cfg.network.lambda.push_back(detail::to_double(v, key));
      } else if (key == "sparsity_layer") {
        sparsity.layer_index = int(detail::to_int(one(), key));
        has_sparsity = true;
      } else if (key == "sparsity_rho") {
        sparsity.target_activation = detail::to_double(one(), key);
        has_sparsity = true;
      } else if (key == "sparsity_beta") {
        sparsity.weight = detail::to_double(one(), key);
        has_sparsity = true;
      } else {
        throw config_error("config: unknown key '" + key + "' in [network]" +
                           where);
      }
      continue;
    }

    if (section == "train") {
      TrainConfig& t = cfg.train;
      if (key == "learning_rate") t.learning_rate = detail::to_double(one(), key);
      else if (key == "batch_size") t.batch_size = detail::to_int(one(), key);
      else if (key == "max_epochs") t.max_epochs = detail::to_int(one(), key);
      else if (key == "patience") t.patience = detail::to_int(one(), key);
      else if (key == "seed") t.seed = detail::to_seed(one(), key);
      else if (key == "stage_epochs") t.stage_epochs = detail::to_int(one(), key);
      else if (key == "stage_patience") t.stage_patience = detail::to_int(one(), key);
      else if (key == "stage_learning_rate") t.stage_learning_rate = detail::to_double(one(), key);
      else if (key == "perturb_fraction") t.perturb_fraction = detail::to_double(one(), key);
      else if (key == "perturb_magnitude") t.perturb_magnitude = detail::to_double(one(), key);
      else
        throw config_error("config: unknown key '" + key + "' in [train]" +
                           where);
      continue;
    }

    // [denoise]
    has_ensemble = true;
    if (key == "models") ensemble.models = val;
    else if (key == "weights") {
      for (const std::string& v : val)
        ensemble.weights.push_back(detail::to_double(v, key));
    } else if (key == "window_rows") {
      for (const std::string& v : val)
        ensemble.window_rows.push_back(detail::to_int(v, key));
    } else if (key == "stride") ensemble.stride = detail::to_int(one(), key);
    else if (key == "input") ensemble.input = one();
    else
      throw config_error("config: unknown key '" + key + "' in [denoise]" +
                         where);
  }

  if (!saw_schema) throw config_error("config: missing schema_version");
  if (!saw_experiment) throw config_error("config: missing experiment");
  if (has_sparsity) cfg.network.sparsity = sparsity;
  if (has_ensemble) {
    validate(ensemble);
    cfg.denoise = ensemble;
  }
  return cfg;
}

inline std::string serialize_config(const ExperimentConfig& cfg) {
  std::string out;
  out += "schema_version " + std::to_string(cfg.schema_version) + "\n";
  out += "experiment " + std::string(to_string(cfg.experiment)) + "\n\n";

  const DatasetConfig& d = cfg.dataset;
  out += "[dataset]\n";
  auto kv = [&out](const char* k, const std::string& v) {
    out += std::string(k) + " " + v + "\n";
  };
  auto kvd = [&](const char* k, double v) { kv(k, detail::fmt(v)); };
  auto kvi = [&](const char* k, Index v) { kv(k, std::to_string(v)); };
  kvi("samples", d.samples);
  switch (cfg.experiment) {
    case ExperimentKind::Math:
      kvd("noisy_fraction", d.noisy_fraction);
      kvd("valid_fraction", d.valid_fraction);
      kvd("noise_level", d.noise_level);
      kvi("test_samples", d.test_samples);
      kvd("test_noise_min", d.test_noise_min);
      kvd("test_noise_max", d.test_noise_max);
      break;
    case ExperimentKind::SP:
      kvd("noisy_fraction", d.noisy_fraction);
      kvd("valid_fraction", d.valid_fraction);
      kvd("noise_level", d.noise_level);
      kvd("unit_fraction", d.unit_fraction);
      kvi("test_samples", d.test_samples);
      break;
    case ExperimentKind::Seismic:
      kvd("noisy_fraction", d.noisy_fraction);
      kvd("valid_fraction", d.valid_fraction);
      kvi("rows", d.rows);
      kvi("cols", d.cols);
      kvd("dt", d.dt);
      kvd("wavelet_hz", d.wavelet_hz);
      kvi("reflectors", d.reflectors);
      kvd("max_dip", d.max_dip);
      kvd("fmin", d.fmin);
      kvd("fmax", d.fmax);
      kvi("corrupt_min", d.corrupt_min);
      kvi("corrupt_max", d.corrupt_max);
      kvi("patch_rows", d.patch_rows);
      kvi("test_corrupt", d.test_corrupt);
      break;
    case ExperimentKind::Well:
      kvd("valid_fraction", d.valid_fraction);
      kv("well_row", d.well_row);
      kvi("suites", d.suites);
      kvi("suite_length", d.suite_length);
      kvi("variants", d.variants);
      kvi("window_m", d.window_m);
      kvi("test_suite_length", d.test_suite_length);
      kvd("test_fraction", d.test_fraction);
      kv("test_log", d.test_log);
      kv("test_mode", d.test_mode);
      kv("test_contiguous", d.test_contiguous ? "true" : "false");
      break;
  }
  kv("seed", std::to_string(d.seed));

  out += "\n[network]\n";
  kv("kind", to_string(cfg.network.kind));
  if (!cfg.network.hidden.empty()) {
    out += "hidden";
    for (Index h : cfg.network.hidden) out += " " + std::to_string(h);
    out += "\n";
  }
  if (!cfg.network.lambda.empty()) {
    out += "lambda";
    for (double l : cfg.network.lambda) out += " " + detail::fmt(l);
    out += "\n";
  }
  if (cfg.network.sparsity) {
    kvi("sparsity_layer", cfg.network.sparsity->layer_index);
    kvd("sparsity_rho", cfg.network.sparsity->target_activation);
    kvd("sparsity_beta", cfg.network.sparsity->weight);
  }

  const TrainConfig& t = cfg.train;
  out += "\n[train]\n";
  kvd("learning_rate", t.learning_rate);
  kvi("batch_size", t.batch_size);
  kvi("max_epochs", t.max_epochs);
  kvi("patience", t.patience);
  kv("seed", std::to_string(t.seed));
  if (t.stage_epochs) kvi("stage_epochs", *t.stage_epochs);
  if (t.stage_patience) kvi("stage_patience", *t.stage_patience);
  if (t.stage_learning_rate) kvd("stage_learning_rate", *t.stage_learning_rate);
  if (cfg.network.kind == NetworkKind::SDAR) {
    kvd("perturb_fraction", t.perturb_fraction);
    kvd("perturb_magnitude", t.perturb_magnitude);
  }

  if (cfg.denoise) {
    const EnsembleSpec& e = *cfg.denoise;
    out += "\n[denoise]\n";
    out += "models";
    for (const std::string& m : e.models) out += " " + m;
    out += "\nweights";
    for (double w : e.weights) out += " " + detail::fmt(w);
    out += "\nwindow_rows";
    for (Index m : e.window_rows) out += " " + std::to_string(m);
    out += "\n";
    kvi("stride", e.stride);
    kv("input", e.input);
  }
  return out;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// Structural validation beyond grammar; runs before any command acts.
inline void validate_config(const ExperimentConfig& cfg) {
  const DatasetConfig& d = cfg.dataset;
  if (d.samples < 0) throw config_error("config: samples must be >= 0");
  if (!(d.noisy_fraction >= 0.0 && d.noisy_fraction <= 1.0))
    throw config_error("config: noisy_fraction out of [0,1]");
  if (!(d.valid_fraction >= 0.0 && d.valid_fraction < 1.0))
    throw config_error("config: valid_fraction out of [0,1)");
  if (cfg.network.hidden.empty())
    throw config_error("config: [network] hidden missing");
  for (Index h : cfg.network.hidden)
    if (h < 1) throw config_error("config: hidden dims must be positive");
  if (!cfg.network.lambda.empty() &&
      cfg.network.lambda.size() != cfg.network.hidden.size() + 1)
    throw config_error(
        "config: lambda needs one entry per weight matrix (hidden + 1)");
  if (cfg.network.kind == NetworkKind::SDA ||
      cfg.network.kind == NetworkKind::SDAR) {
    if (cfg.network.hidden.size() % 2 == 0)
      throw config_error("config: stacked nets need an odd hidden count");
    for (std::size_t k = 0; k < cfg.network.hidden.size() / 2; ++k)
      if (cfg.network.hidden[k] !=
          cfg.network.hidden[cfg.network.hidden.size() - 1 - k])
        throw config_error("config: stacked hidden dims must be symmetric");
  }
  if (!(cfg.train.learning_rate > 0.0))
    throw config_error("config: learning_rate must be positive");
  if (cfg.train.batch_size < 1)
    throw config_error("config: batch_size must be >= 1");
  if (cfg.train.max_epochs < 0)
    throw config_error("config: max_epochs must be >= 0");
  if (cfg.train.patience < 0)
    throw config_error("config: patience must be >= 0");

  switch (cfg.experiment) {
    case ExperimentKind::Math:
      if (!(d.test_noise_min >= 0.0 && d.test_noise_min <= d.test_noise_max))
        throw config_error("config: test noise range invalid");
      break;
    case ExperimentKind::SP:
      if (!(d.unit_fraction > 0.0 && d.unit_fraction <= 1.0))
        throw config_error("config: unit_fraction out of (0,1]");
      break;
    case ExperimentKind::Seismic:
      if (d.patch_rows < 1 || d.patch_rows > d.rows)
        throw config_error("config: patch_rows out of range");
      if (d.test_corrupt < 0 || d.test_corrupt > d.cols)
        throw config_error("config: test_corrupt out of range");
      if (!(d.fmin > 0.0 && d.fmin <= d.fmax && d.fmax * d.dt < 0.5))
        throw config_error("config: corruption band outside (0, Nyquist)");
      break;
    case ExperimentKind::Well:
      if (d.window_m < 1 || d.window_m > d.suite_length)
        throw config_error("config: window_m out of range");
      if (!(d.test_fraction >= 0.1 && d.test_fraction <= 0.4))
        throw config_error("config: test_fraction out of [0.1, 0.4]");
      if (d.suites < 1) throw config_error("config: suites must be >= 1");
      if (d.variants < 1) throw config_error("config: variants must be >= 1");
      break;
  }
  if (cfg.denoise) validate(*cfg.denoise);
}

}  // namespace sdae

#endif
