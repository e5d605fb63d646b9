#ifndef SDAE_TEST_HELPERS_HPP
#define SDAE_TEST_HELPERS_HPP

#include "sdae/sdae.hpp"

#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <unistd.h>

namespace testutil {

using namespace sdae;

inline Network random_net(const std::vector<Index>& dims, std::uint64_t seed,
                          bool linear_output = true) {
  std::vector<Activation> acts(dims.size() - 1, Activation::Sigmoid);
  if (linear_output) acts.back() = Activation::Linear;
  return init_network(dims, acts, seed);
}

inline Matrix random_matrix(Index rows, Index cols, std::uint64_t seed,
                            double lo = -1.0, double hi = 1.0) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = u(rng);
  return m;
}

inline Vector random_vector(Index n, std::uint64_t seed, double lo = -1.0,
                            double hi = 1.0) {
  return Vector(random_matrix(n, 1, seed, lo, hi));
}

// Worst relative error between two gradient sets, with an absolute floor so
// near-zero entries compare sanely.
inline double gradient_gap(const Gradients& a, const Gradients& b,
                           double floor = 1e-3) {
  double worst = 0.0;
  auto upd = [&](double x, double y) {
    double rel = std::abs(x - y) / std::max({std::abs(x), std::abs(y), floor});
    worst = std::max(worst, rel);
  };
  for (std::size_t l = 0; l < a.weights.size(); ++l) {
    for (Index i = 0; i < a.weights[l].size(); ++i)
      upd(a.weights[l](i), b.weights[l](i));
    for (Index i = 0; i < a.biases[l].size(); ++i)
      upd(a.biases[l][i], b.biases[l][i]);
  }
  return worst;
}

// Unique scratch directory under the system temp dir; removed on destruction.
struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path = std::filesystem::temp_directory_path() /
           ("sdae_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline std::string slurp(const std::filesystem::path& p) {
  return sdae::detail::read_file(p);
}

inline SampleSet identity_task(Index dim, Index count, std::uint64_t seed) {
  SampleSet s;
  s.clean = random_matrix(dim, count, seed);
  s.corrupted = s.clean;
  s.noisy.assign(std::size_t(count), 0);
  return s;
}

}  // namespace testutil

#endif
