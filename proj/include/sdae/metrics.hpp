#ifndef SDAE_METRICS_HPP
#define SDAE_METRICS_HPP

#include "sdae/core.hpp"

namespace sdae {

// Residual-to-noise energy ratio ||z-x||^2 / ||x_tilde-x||^2. This is the
// quantity the reduction percentage is built from; kept visible alongside it.
inline double eta_ratio(const Vector& clean, const Vector& corrupted,
                        const Vector& output) {
  if (clean.size() != corrupted.size() || clean.size() != output.size())
    throw shape_error("eta: length mismatch");
  double noise = (corrupted - clean).squaredNorm();
  if (noise == 0.0)
    throw undefined_metric_error("eta: zero input-noise energy");
  return (output - clean).squaredNorm() / noise;
}

// Noise-reduction efficiency in percent: 100 * (1 - residual/noise energy).
// 100 is perfect recovery, 0 a no-op, negative means the model made it worse.
inline double eta(const Vector& clean, const Vector& corrupted,
                  const Vector& output) {
  return 100.0 * (1.0 - eta_ratio(clean, corrupted, output));
}

struct EvalReport {
  std::vector<double> per_sample_eta;    // percent; NaN where noise energy is 0
  std::vector<double> per_sample_ratio;  // residual/noise energy
  double mean_eta = std::numeric_limits<double>::quiet_NaN();
  double mean_ratio = std::numeric_limits<double>::quiet_NaN();
  // One energy ratio over the whole set, as if it were a single long signal.
  // Noise-energy weighted, so samples that carry hardly any noise cannot
  // dominate the way they do in the per-sample mean.
  double pooled_eta = std::numeric_limits<double>::quiet_NaN();
  double pooled_ratio = std::numeric_limits<double>::quiet_NaN();
  Index n_samples = 0;
  Index n_eta_samples = 0;  // samples with nonzero noise energy

  bool has_clean_region = false;
  bool has_corrupt_region = false;
  double mse_clean_region = std::numeric_limits<double>::quiet_NaN();
  double mse_corrupt_region = std::numeric_limits<double>::quiet_NaN();
  double max_abs_clean_change = std::numeric_limits<double>::quiet_NaN();
  // Energy-ratio reduction restricted to the masked cells.
  double eta_corrupt_region = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline void fill_region_stats(EvalReport& rep, const Matrix& clean,
                              const Matrix& corrupted, const Matrix& output,
                              const MaskMatrix& mask) {
  double sq_clean = 0.0, sq_corrupt = 0.0, noise_corrupt = 0.0;
  double max_clean = 0.0;
  Index n_clean = 0, n_corrupt = 0;
  for (Index j = 0; j < clean.cols(); ++j)
    for (Index i = 0; i < clean.rows(); ++i) {
      double err = output(i, j) - clean(i, j);
      if (mask(i, j)) {
        sq_corrupt += err * err;
        double noise = corrupted(i, j) - clean(i, j);
        noise_corrupt += noise * noise;
        ++n_corrupt;
      } else {
        sq_clean += err * err;
        max_clean = std::max(max_clean, std::abs(err));
        ++n_clean;
      }
    }
  rep.has_clean_region = n_clean > 0;
  rep.has_corrupt_region = n_corrupt > 0;
  if (n_clean > 0) {
    rep.mse_clean_region = sq_clean / double(n_clean);
    rep.max_abs_clean_change = max_clean;
  }
  if (n_corrupt > 0) {
    rep.mse_corrupt_region = sq_corrupt / double(n_corrupt);
    if (noise_corrupt > 0.0)
      rep.eta_corrupt_region = 100.0 * (1.0 - sq_corrupt / noise_corrupt);
  }
}

inline void fill_per_sample(EvalReport& rep, const Matrix& clean,
                            const Matrix& corrupted, const Matrix& output) {
  rep.n_samples = clean.cols();
  rep.per_sample_eta.resize(std::size_t(clean.cols()));
  rep.per_sample_ratio.resize(std::size_t(clean.cols()));
  double eta_sum = 0.0, ratio_sum = 0.0;
  double residual_total = 0.0, noise_total = 0.0;
  Index n = 0;
  for (Index j = 0; j < clean.cols(); ++j) {
    double noise = (corrupted.col(j) - clean.col(j)).squaredNorm();
    double residual = (output.col(j) - clean.col(j)).squaredNorm();
    residual_total += residual;
    noise_total += noise;
    if (noise == 0.0) {
      rep.per_sample_eta[std::size_t(j)] =
          std::numeric_limits<double>::quiet_NaN();
      rep.per_sample_ratio[std::size_t(j)] =
          std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    double ratio = residual / noise;
    rep.per_sample_ratio[std::size_t(j)] = ratio;
    rep.per_sample_eta[std::size_t(j)] = 100.0 * (1.0 - ratio);
    eta_sum += 100.0 * (1.0 - ratio);
    ratio_sum += ratio;
    ++n;
  }
  rep.n_eta_samples = n;
  if (n > 0) {
    rep.mean_eta = eta_sum / double(n);
    rep.mean_ratio = ratio_sum / double(n);
  }
  if (noise_total > 0.0) {
    rep.pooled_ratio = residual_total / noise_total;
    rep.pooled_eta = 100.0 * (1.0 - rep.pooled_ratio);
  }
}

}  // namespace detail

// Region-split error report. Mask marks corrupted/muted cells; MSE is
// reported per region, absent regions stay not-applicable rather than zero.
inline EvalReport region_report(const Matrix& clean, const Matrix& corrupted,
                                const Matrix& output, const MaskMatrix& mask) {
  if (clean.rows() != corrupted.rows() || clean.cols() != corrupted.cols() ||
      clean.rows() != output.rows() || clean.cols() != output.cols() ||
      clean.rows() != mask.rows() || clean.cols() != mask.cols())
    throw shape_error("region_report: shape mismatch");
  if (clean.size() == 0) throw argument_error("region_report: empty input");
  EvalReport rep;
  detail::fill_per_sample(rep, clean, corrupted, output);
  detail::fill_region_stats(rep, clean, corrupted, output, mask);
  return rep;
}

// Per-sample eta over a test set (columns = samples); the corrupted/clean
// mismatch itself defines the corrupted region.
inline EvalReport evaluate_set(const Matrix& clean, const Matrix& corrupted,
                               const Matrix& output) {
  MaskMatrix mask =
      (clean.array() != corrupted.array()).cast<std::uint8_t>().matrix();
  return region_report(clean, corrupted, output, mask);
}

}  // namespace sdae

#endif
