#ifndef SDAE_IO_HPP
#define SDAE_IO_HPP

#include "sdae/core.hpp"
#include "sdae/metrics.hpp"
#include "sdae/train.hpp"

#include <bit>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace sdae {

namespace detail {

// All binary artifacts are little-endian regardless of host.
inline void put_u32(std::string& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(char((v >> (8 * i)) & 0xff));
}
inline void put_u64(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(char((v >> (8 * i)) & 0xff));
}
inline void put_f64(std::string& buf, double d) {
  put_u64(buf, std::bit_cast<std::uint64_t>(d));
}

struct Reader {
  const std::string& buf;
  std::size_t pos = 0;
  std::string path;

  void need(std::size_t n) const {
    if (pos + n > buf.size())
      throw io_error(path + ": truncated at offset " + std::to_string(pos));
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= std::uint32_t(std::uint8_t(buf[pos + std::size_t(i)])) << (8 * i);
    pos += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= std::uint64_t(std::uint8_t(buf[pos + std::size_t(i)])) << (8 * i);
    pos += 8;
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::uint8_t u8() {
    need(1);
    return std::uint8_t(buf[pos++]);
  }
};

inline void write_file(const std::filesystem::path& path,
                       const std::string& buf) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open for writing: " + path.string());
  out.write(buf.data(), std::streamsize(buf.size()));
  if (!out) throw io_error("write failed: " + path.string());
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open: " + path.string());
  std::string buf((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  if (in.bad()) throw io_error("read failed: " + path.string());
  return buf;
}

// Shortest of 15..17 significant digits that parses back to the same double;
// used by every text artifact so identical runs produce identical bytes.
inline std::string fmt(double v) {
  char tmp[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(tmp, sizeof tmp, "%.*g", prec, v);
    if (std::strtod(tmp, nullptr) == v) break;
  }
  return tmp;
}

inline void put_affine(std::string& buf, const FeatureAffine& a) {
  for (Index i = 0; i < a.shift.size(); ++i) put_f64(buf, a.shift[i]);
  for (Index i = 0; i < a.scale.size(); ++i) put_f64(buf, a.scale[i]);
}

inline FeatureAffine get_affine(Reader& r, Index dim) {
  FeatureAffine a;
  a.shift.resize(dim);
  a.scale.resize(dim);
  for (Index i = 0; i < dim; ++i) a.shift[i] = r.f64();
  for (Index i = 0; i < dim; ++i) a.scale[i] = r.f64();
  return a;
}

}  // namespace detail

inline constexpr std::uint32_t model_format_version = 1;
inline constexpr std::uint32_t dataset_format_version = 1;

// Model file: "SDAN", version, dim chain, activation kinds, both affines,
// then per layer row-major weights followed by biases, all f64 LE.
inline void save_network(const Network& net, const std::filesystem::path& path) {
  validate(net);
  std::string buf;
  buf += "SDAN";
  detail::put_u32(buf, model_format_version);
  detail::put_u32(buf, std::uint32_t(net.layers.size()));
  detail::put_u32(buf, std::uint32_t(net.in_dim()));
  for (const DenseLayer& l : net.layers)
    detail::put_u32(buf, std::uint32_t(l.out_dim()));
  for (const DenseLayer& l : net.layers)
    buf.push_back(char(std::uint8_t(l.activation)));
  detail::put_affine(buf, net.input_norm);
  detail::put_affine(buf, net.output_norm);
  for (const DenseLayer& l : net.layers) {
    for (Index i = 0; i < l.weights.rows(); ++i)
      for (Index j = 0; j < l.weights.cols(); ++j)
        detail::put_f64(buf, l.weights(i, j));
    for (Index i = 0; i < l.biases.size(); ++i)
      detail::put_f64(buf, l.biases[i]);
  }
  detail::write_file(path, buf);
}

inline Network load_network(const std::filesystem::path& path) {
  const std::string buf = detail::read_file(path);
  detail::Reader r{buf, 0, path.string()};
  r.need(4);
  if (buf.compare(0, 4, "SDAN") != 0)
    throw io_error(path.string() + ": not a model file");
  r.pos = 4;
  const std::uint32_t version = r.u32();
  if (version != model_format_version)
    throw io_error(path.string() + ": unsupported model version " +
                   std::to_string(version));
  const std::uint32_t n_layers = r.u32();
  if (n_layers == 0) throw io_error(path.string() + ": no layers");
  std::vector<Index> dims(n_layers + 1);
  dims[0] = Index(r.u32());
  for (std::uint32_t l = 0; l < n_layers; ++l)
    dims[l + 1] = Index(r.u32());
  std::vector<Activation> acts(n_layers);
  for (std::uint32_t l = 0; l < n_layers; ++l) {
    std::uint8_t a = r.u8();
    if (a > 1)
      throw io_error(path.string() + ": unknown activation kind " +
                     std::to_string(int(a)));
    acts[l] = Activation(a);
  }
  Network net;
  net.input_norm = detail::get_affine(r, dims.front());
  net.output_norm = detail::get_affine(r, dims.back());
  net.layers.resize(n_layers);
  for (std::uint32_t l = 0; l < n_layers; ++l) {
    DenseLayer& layer = net.layers[l];
    layer.activation = acts[l];
    layer.weights.resize(dims[l + 1], dims[l]);
    for (Index i = 0; i < layer.weights.rows(); ++i)
      for (Index j = 0; j < layer.weights.cols(); ++j)
        layer.weights(i, j) = r.f64();
    layer.biases.resize(dims[l + 1]);
    for (Index i = 0; i < layer.biases.size(); ++i) layer.biases[i] = r.f64();
  }
  if (r.pos != buf.size())
    throw io_error(path.string() + ": trailing bytes");
  validate(net);
  return net;
}

// Dataset file: "SDDS", version, sample_dim, n_samples, per-sample noisy
// flags, then the clean block and the corrupted block, column by column.
inline void save_sample_set(const SampleSet& set,
                            const std::filesystem::path& path) {
  if (set.clean.rows() != set.corrupted.rows() ||
      set.clean.cols() != set.corrupted.cols())
    throw shape_error("save dataset: clean/corrupted shape mismatch");
  std::string buf;
  buf += "SDDS";
  detail::put_u32(buf, dataset_format_version);
  detail::put_u32(buf, std::uint32_t(set.clean.rows()));
  detail::put_u64(buf, std::uint64_t(set.clean.cols()));
  for (Index i = 0; i < set.clean.cols(); ++i)
    buf.push_back(
        set.noisy.empty() ? char(0) : char(set.noisy[std::size_t(i)] ? 1 : 0));
  for (Index j = 0; j < set.clean.cols(); ++j)
    for (Index i = 0; i < set.clean.rows(); ++i)
      detail::put_f64(buf, set.clean(i, j));
  for (Index j = 0; j < set.corrupted.cols(); ++j)
    for (Index i = 0; i < set.corrupted.rows(); ++i)
      detail::put_f64(buf, set.corrupted(i, j));
  detail::write_file(path, buf);
}

inline SampleSet load_sample_set(const std::filesystem::path& path) {
  const std::string buf = detail::read_file(path);
  detail::Reader r{buf, 0, path.string()};
  r.need(4);
  if (buf.compare(0, 4, "SDDS") != 0)
    throw io_error(path.string() + ": not a dataset file");
  r.pos = 4;
  const std::uint32_t version = r.u32();
  if (version != dataset_format_version)
    throw io_error(path.string() + ": unsupported dataset version " +
                   std::to_string(version));
  const auto dim = Index(r.u32());
  const auto count = Index(r.u64());
  SampleSet set;
  set.noisy.resize(std::size_t(count));
  for (Index i = 0; i < count; ++i) set.noisy[std::size_t(i)] = r.u8();
  set.clean.resize(dim, count);
  for (Index j = 0; j < count; ++j)
    for (Index i = 0; i < dim; ++i) set.clean(i, j) = r.f64();
  set.corrupted.resize(dim, count);
  for (Index j = 0; j < count; ++j)
    for (Index i = 0; i < dim; ++i) set.corrupted(i, j) = r.f64();
  if (r.pos != buf.size())
    throw io_error(path.string() + ": trailing bytes");
  return set;
}

// One row per sample: index, noisy flag, clean values, corrupted values.
inline void write_sample_set_csv(const SampleSet& set,
                                 const std::filesystem::path& path) {
  std::string buf = "index,noisy";
  for (Index i = 0; i < set.dim(); ++i) buf += ",clean_" + std::to_string(i);
  for (Index i = 0; i < set.dim(); ++i)
    buf += ",corrupted_" + std::to_string(i);
  buf += "\n";
  for (Index j = 0; j < set.count(); ++j) {
    buf += std::to_string(j);
    buf += set.noisy.empty() ? ",0" : (set.noisy[std::size_t(j)] ? ",1" : ",0");
    for (Index i = 0; i < set.dim(); ++i)
      buf += "," + detail::fmt(set.clean(i, j));
    for (Index i = 0; i < set.dim(); ++i)
      buf += "," + detail::fmt(set.corrupted(i, j));
    buf += "\n";
  }
  detail::write_file(path, buf);
}

// One row per time sample (matrix row), cells comma-separated.
inline void write_matrix_csv(const Matrix& m,
                             const std::filesystem::path& path) {
  std::string buf;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) buf += ",";
      buf += detail::fmt(m(i, j));
    }
    buf += "\n";
  }
  detail::write_file(path, buf);
}

inline void write_history_csv(const std::vector<EpochStats>& history,
                              const std::filesystem::path& path) {
  std::string buf = "epoch,train_loss,valid_loss\n";
  for (std::size_t e = 0; e < history.size(); ++e)
    buf += std::to_string(e) + "," + detail::fmt(history[e].train_loss) + "," +
           detail::fmt(history[e].valid_loss) + "\n";
  detail::write_file(path, buf);
}

// Structured key-value text; the plot exporter and tests consume this.
inline void write_report_kv(const EvalReport& rep,
                            const std::filesystem::path& path) {
  std::string buf;
  auto put = [&](const char* key, double v, bool present = true) {
    buf += key;
    buf += " ";
    buf += present ? detail::fmt(v) : "n/a";
    buf += "\n";
  };
  buf += "schema_version 1\n";
  buf += "n_samples " + std::to_string(rep.n_samples) + "\n";
  buf += "n_eta_samples " + std::to_string(rep.n_eta_samples) + "\n";
  put("mean_eta", rep.mean_eta, rep.n_eta_samples > 0);
  put("mean_ratio", rep.mean_ratio, rep.n_eta_samples > 0);
  put("pooled_eta", rep.pooled_eta, std::isfinite(rep.pooled_eta));
  put("pooled_ratio", rep.pooled_ratio, std::isfinite(rep.pooled_ratio));
  put("mse_clean_region", rep.mse_clean_region, rep.has_clean_region);
  put("mse_corrupt_region", rep.mse_corrupt_region, rep.has_corrupt_region);
  put("max_abs_clean_change", rep.max_abs_clean_change, rep.has_clean_region);
  put("eta_corrupt_region", rep.eta_corrupt_region,
      rep.has_corrupt_region && std::isfinite(rep.eta_corrupt_region));
  detail::write_file(path, buf);
}

inline void write_per_sample_csv(const EvalReport& rep,
                                 const std::filesystem::path& path) {
  std::string buf = "index,eta,ratio\n";
  for (std::size_t j = 0; j < rep.per_sample_eta.size(); ++j)
    buf += std::to_string(j) + "," + detail::fmt(rep.per_sample_eta[j]) + "," +
           detail::fmt(rep.per_sample_ratio[j]) + "\n";
  detail::write_file(path, buf);
}

}  // namespace sdae

#endif
