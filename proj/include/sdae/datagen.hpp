#ifndef SDAE_DATAGEN_HPP
#define SDAE_DATAGEN_HPP

#include "sdae/core.hpp"

namespace sdae {

// ---------------------------------------------------------------------------
// Process-model curves (vector experiment 1)

struct ProcessModelParams {
  double z = 1.0;      // [0.5, 4]
  double theta = 0.5;  // radians, [0.3, 1.3]
};

inline const Vector& process_t_grid() {
  static const Vector grid = [] {
    Vector g(20);
    for (Index i = 0; i < 20; ++i) g[i] = 0.05 * double(i + 1);
    return g;
  }();
  return grid;
}

inline double process_model_value(double t, double z, double theta) {
  return t * z * std::sin(theta) + (t * t / z) * std::cos(theta);
}

inline Vector process_model(const ProcessModelParams& p) {
  if (!(p.z >= 0.5 && p.z <= 4.0))
    throw argument_error("process model: z out of [0.5, 4]");
  if (!(p.theta >= 0.3 && p.theta <= 1.3))
    throw argument_error("process model: theta out of [0.3, 1.3]");
  const Vector& t = process_t_grid();
  Vector x(t.size());
  for (Index i = 0; i < t.size(); ++i)
    x[i] = process_model_value(t[i], p.z, p.theta);
  return x;
}

// ---------------------------------------------------------------------------
// Self-potential anomaly curves (vector experiment 2)

struct SPParams {
  double d = 2.0;          // depth, m, [1, 8]
  double theta_deg = 45.0; // polarization angle, [25, 75]
  double K = 100.0;        // dipole moment, mV, [-1000, 1000]
  double q = 1.0;          // shape factor, [0.5, 1.5]
  double r0 = 0.0;         // origin offset, m, [-5, 5]
};

inline const Vector& sp_r_grid() {
  static const Vector grid = [] {
    Vector g(17);
    for (Index i = 0; i < 17; ++i) g[i] = -20.0 + 2.5 * double(i);
    return g;
  }();
  return grid;
}

inline double sp_anomaly_value(double r, const SPParams& p) {
  double theta = p.theta_deg * M_PI / 180.0;
  double dr = r - p.r0;
  return p.K * (dr * std::cos(theta) + p.d * std::sin(theta)) /
         std::pow(dr * dr + p.d * p.d, p.q);
}

inline void validate(const SPParams& p) {
  if (!(p.d >= 1.0 && p.d <= 8.0))
    throw argument_error("sp params: d out of [1, 8]");
  if (!(p.theta_deg >= 25.0 && p.theta_deg <= 75.0))
    throw argument_error("sp params: theta out of [25, 75] deg");
  if (!(p.K >= -1000.0 && p.K <= 1000.0))
    throw argument_error("sp params: K out of [-1000, 1000]");
  if (!(p.q >= 0.5 && p.q <= 1.5))
    throw argument_error("sp params: q out of [0.5, 1.5]");
  if (!(p.r0 >= -5.0 && p.r0 <= 5.0))
    throw argument_error("sp params: r0 out of [-5, 5]");
}

inline Vector sp_anomaly(const SPParams& p) {
  validate(p);
  const Vector& r = sp_r_grid();
  Vector v(r.size());
  for (Index i = 0; i < r.size(); ++i) v[i] = sp_anomaly_value(r[i], p);
  return v;
}

// ---------------------------------------------------------------------------
// Noise injectors

enum class NoiseMode : std::uint8_t { LocalScale = 0, MeanScale = 1 };

// LocalScale: x_i * (1 + u_i). MeanScale: x_i + mean(|x|) * u_i.
// u_i uniform in [-level, level], drawn in index order at `points`.
inline Vector add_random_noise_at(const Vector& x, double level, NoiseMode mode,
                                  const std::vector<Index>& points, Rng& rng) {
  if (level < 0.0) throw argument_error("noise: level must be >= 0");
  Vector out = x;
  std::uniform_real_distribution<double> u(-level, level);
  const double mbar = x.cwiseAbs().mean();
  for (Index i : points) {
    if (i < 0 || i >= x.size())
      throw argument_error("noise: point index out of range");
    double ui = u(rng);
    out[i] = mode == NoiseMode::LocalScale ? x[i] * (1.0 + ui)
                                           : x[i] + mbar * ui;
  }
  return out;
}

inline Vector add_random_noise(const Vector& x, double level, NoiseMode mode,
                               std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Index> all(std::size_t(x.size()));
  std::iota(all.begin(), all.end(), Index(0));
  return add_random_noise_at(x, level, mode, all, rng);
}

namespace detail {

// First k of 0..n-1 after a seeded partial Fisher-Yates shuffle.
inline std::vector<Index> pick_distinct(Index n, Index k, Rng& rng) {
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index(0));
  for (Index i = 0; i < k; ++i) {
    std::uniform_int_distribution<Index> d(i, n - 1);
    std::swap(idx[std::size_t(i)], idx[std::size_t(d(rng))]);
  }
  idx.resize(std::size_t(k));
  return idx;
}

// Spread `want` marks evenly over `total` slots; exact count, deterministic.
inline bool spread_flag(Index i, Index total, Index want) {
  return (i + 1) * want / total != i * want / total;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Vector dataset factories. Sample i draws its parameters and noise from
// mix_seed(seed, i), so sets are reproducible and order-independent.

inline SampleSet make_math_samples(Index count, Index noisy_count, double level,
                                   std::uint64_t seed) {
  if (count < 0 || noisy_count < 0 || noisy_count > count)
    throw argument_error("math set: bad counts");
  SampleSet set;
  set.clean.resize(20, count);
  set.corrupted.resize(20, count);
  set.noisy.assign(std::size_t(count), 0);
  for (Index i = 0; i < count; ++i) {
    Rng rng(mix_seed(seed, std::uint64_t(i)));
    std::uniform_real_distribution<double> uz(0.5, 4.0), ut(0.3, 1.3);
    ProcessModelParams p{uz(rng), ut(rng)};
    Vector x = process_model(p);
    set.clean.col(i) = x;
    if (detail::spread_flag(i, count, noisy_count)) {
      NoiseMode mode = i % 2 == 0 ? NoiseMode::LocalScale : NoiseMode::MeanScale;
      std::vector<Index> all(std::size_t(x.size()));
      std::iota(all.begin(), all.end(), Index(0));
      set.corrupted.col(i) = add_random_noise_at(x, level, mode, all, rng);
      set.noisy[std::size_t(i)] = 1;
    } else {
      set.corrupted.col(i) = x;
    }
  }
  return set;
}

// All samples noisy, per-sample level uniform in [level_min, level_max].
inline SampleSet make_math_test(Index count, double level_min, double level_max,
                                std::uint64_t seed) {
  if (!(level_min >= 0.0 && level_min <= level_max))
    throw argument_error("math test: bad level range");
  SampleSet set;
  set.clean.resize(20, count);
  set.corrupted.resize(20, count);
  set.noisy.assign(std::size_t(count), 1);
  for (Index i = 0; i < count; ++i) {
    Rng rng(mix_seed(seed, std::uint64_t(i)));
    std::uniform_real_distribution<double> uz(0.5, 4.0), ut(0.3, 1.3),
        ul(level_min, level_max);
    ProcessModelParams p{uz(rng), ut(rng)};
    Vector x = process_model(p);
    double level = ul(rng);
    NoiseMode mode = i % 2 == 0 ? NoiseMode::LocalScale : NoiseMode::MeanScale;
    std::vector<Index> all(std::size_t(x.size()));
    std::iota(all.begin(), all.end(), Index(0));
    set.clean.col(i) = x;
    set.corrupted.col(i) = add_random_noise_at(x, level, mode, all, rng);
  }
  return set;
}

inline SPParams draw_sp_params(Rng& rng) {
  std::uniform_real_distribution<double> ud(1.0, 8.0), uth(25.0, 75.0),
      uK(-1000.0, 1000.0), uq(0.5, 1.5), ur0(-5.0, 5.0);
  SPParams p;
  p.d = ud(rng);
  p.theta_deg = uth(rng);
  p.K = uK(rng);
  p.q = uq(rng);
  p.r0 = ur0(rng);
  return p;
}

// Noisy samples get `level` noise on ceil(unit_fraction * 17) randomly chosen
// grid points, alternating LocalScale/MeanScale.
inline SampleSet make_sp_samples(Index count, Index noisy_count, double level,
                                 double unit_fraction, std::uint64_t seed) {
  if (count < 0 || noisy_count < 0 || noisy_count > count)
    throw argument_error("sp set: bad counts");
  if (!(unit_fraction > 0.0 && unit_fraction <= 1.0))
    throw argument_error("sp set: unit fraction out of (0,1]");
  SampleSet set;
  set.clean.resize(17, count);
  set.corrupted.resize(17, count);
  set.noisy.assign(std::size_t(count), 0);
  const auto units = Index(std::ceil(unit_fraction * 17.0));
  for (Index i = 0; i < count; ++i) {
    Rng rng(mix_seed(seed, std::uint64_t(i)));
    Vector x = sp_anomaly(draw_sp_params(rng));
    set.clean.col(i) = x;
    if (detail::spread_flag(i, count, noisy_count)) {
      NoiseMode mode = i % 2 == 0 ? NoiseMode::LocalScale : NoiseMode::MeanScale;
      std::vector<Index> pts = detail::pick_distinct(17, units, rng);
      set.corrupted.col(i) = add_random_noise_at(x, level, mode, pts, rng);
      set.noisy[std::size_t(i)] = 1;
    } else {
      set.corrupted.col(i) = x;
    }
  }
  return set;
}

inline SampleSet make_sp_test(Index count, double level, double unit_fraction,
                              std::uint64_t seed) {
  return make_sp_samples(count, count, level, unit_fraction, seed);
}

// ---------------------------------------------------------------------------
// Synthetic seismic sections. Rows are time samples, columns are traces.

struct SeismicSection {
  Matrix amplitudes;
  double dt = 0.002;

  Index rows() const { return amplitudes.rows(); }
  Index cols() const { return amplitudes.cols(); }
  double amax() const {
    return amplitudes.size() == 0 ? 0.0 : amplitudes.cwiseAbs().maxCoeff();
  }
};

inline double ricker(double f, double t) {
  double a = M_PI * M_PI * f * f * t * t;
  return (1.0 - 2.0 * a) * std::exp(-a);
}

// Reflectivity spikes at the given depths with a per-reflector dip of up to
// max_dip rows per trace, convolved per trace with a Ricker wavelet.
inline SeismicSection synth_seismic(
    const std::vector<std::pair<Index, double>>& layers, double wavelet_hz,
    double dt, Index rows, Index cols, std::uint64_t seed,
    double max_dip = 0.15) {
  if (rows < 1 || cols < 1) throw argument_error("seismic: shape must be >= 1");
  if (!(dt > 0.0)) throw argument_error("seismic: dt must be positive");
  if (!(wavelet_hz > 0.0 && wavelet_hz * dt < 0.5))
    throw argument_error("seismic: wavelet frequency violates Nyquist");
  if (max_dip < 0.0) throw argument_error("seismic: max dip must be >= 0");

  Matrix refl = Matrix::Zero(rows, cols);
  Rng rng(seed);
  std::uniform_real_distribution<double> udip(-max_dip, max_dip);
  for (auto [depth, c] : layers) {
    if (depth < 0 || depth >= rows)
      throw argument_error("seismic: reflector depth out of range");
    double dip = max_dip > 0.0 ? udip(rng) : 0.0;
    for (Index j = 0; j < cols; ++j) {
      auto r = depth + Index(std::llround(dip * (double(j) - double(cols - 1) / 2.0)));
      if (r >= 0 && r < rows) refl(r, j) += c;
    }
  }

  const auto half = Index(std::ceil(1.5 / (wavelet_hz * dt)));
  Vector kernel(2 * half + 1);
  for (Index k = -half; k <= half; ++k)
    kernel[k + half] = ricker(wavelet_hz, double(k) * dt);

  SeismicSection s;
  s.dt = dt;
  s.amplitudes = Matrix::Zero(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      if (refl(i, j) == 0.0) continue;
      const Index lo = std::max<Index>(0, i - half);
      const Index hi = std::min<Index>(rows - 1, i + half);
      for (Index r = lo; r <= hi; ++r)
        s.amplitudes(r, j) += refl(i, j) * kernel[r - i + half];
    }
  return s;
}

inline Vector sine_trace(Index rows, double f, double dt, double amplitude) {
  Vector v(rows);
  for (Index k = 0; k < rows; ++k)
    v[k] = amplitude * std::sin(2.0 * M_PI * f * double(k) * dt);
  return v;
}

// Replace the listed traces with monofrequency sinusoids: f uniform in
// [fmin, fmax], amplitude uniform in [0.5 * amax, amax] of the input section.
inline SeismicSection corrupt_traces(const SeismicSection& s,
                                     const std::vector<Index>& traces,
                                     double fmin, double fmax,
                                     std::uint64_t seed) {
  if (!(fmin > 0.0 && fmin <= fmax && fmax * s.dt < 0.5))
    throw argument_error("corrupt traces: frequency band outside (0, Nyquist)");
  SeismicSection out = s;
  const double amax = s.amax();
  Rng rng(seed);
  std::uniform_real_distribution<double> uf(fmin, fmax), ua(0.5 * amax, amax);
  for (Index j : traces) {
    if (j < 0 || j >= s.cols())
      throw argument_error("corrupt traces: trace index out of range");
    double f = uf(rng);
    double a = ua(rng);
    out.amplitudes.col(j) = sine_trace(s.rows(), f, s.dt, a);
  }
  return out;
}

struct SeismicGenParams {
  Index rows = 99;
  Index cols = 42;
  double dt = 0.002;
  double wavelet_hz = 40.0;
  Index reflectors = 12;
  double max_dip = 0.15;
  double fmin = 100.0;
  double fmax = 220.0;
  Index corrupt_min = 4;  // corrupted traces per section
  Index corrupt_max = 10;
};

struct SectionPair {
  SeismicSection clean;
  SeismicSection corrupted;
  std::vector<Index> corrupt_cols;

  MaskMatrix mask() const {
    MaskMatrix m = MaskMatrix::Zero(clean.rows(), clean.cols());
    for (Index j : corrupt_cols) m.col(j).setConstant(1);
    return m;
  }
};

inline SectionPair make_section_pair(const SeismicGenParams& p, Index n_corrupt,
                                     std::uint64_t seed) {
  if (p.rows < 8 || p.cols < 1)
    throw argument_error("section pair: section too small");
  if (p.reflectors < 1)
    throw argument_error("section pair: need at least one reflector");
  if (n_corrupt < 0 || n_corrupt > p.cols)
    throw argument_error("section pair: corrupt count out of range");
  Rng rng(mix_seed(seed, 0));
  std::uniform_int_distribution<Index> udepth(2, p.rows - 3);
  std::uniform_real_distribution<double> uamp(0.25, 1.0);
  std::vector<std::pair<Index, double>> layers;
  layers.reserve(std::size_t(p.reflectors));
  for (Index k = 0; k < p.reflectors; ++k) {
    double sign = rng() % 2 == 0 ? 1.0 : -1.0;
    layers.emplace_back(udepth(rng), sign * uamp(rng));
  }
  SectionPair pair;
  pair.clean = synth_seismic(layers, p.wavelet_hz, p.dt, p.rows, p.cols,
                             mix_seed(seed, 1), p.max_dip);
  pair.corrupt_cols = detail::pick_distinct(p.cols, n_corrupt, rng);
  std::sort(pair.corrupt_cols.begin(), pair.corrupt_cols.end());
  pair.corrupted = corrupt_traces(pair.clean, pair.corrupt_cols, p.fmin,
                                  p.fmax, mix_seed(seed, 2));
  return pair;
}

// Full-width time slabs (patch_rows x cols) cut from a stream of synthetic
// section pairs. noisy_count of them come from the corrupted section, spread
// evenly; every slab sees the corrupted traces, so slabs from corrupted
// sections are flagged noisy.
inline SampleSet make_seismic_patches(const SeismicGenParams& p,
                                      Index patch_rows, Index n_patches,
                                      Index noisy_count, std::uint64_t seed) {
  if (patch_rows < 1 || patch_rows > p.rows)
    throw argument_error("seismic patches: patch rows out of range");
  if (n_patches < 0 || noisy_count < 0 || noisy_count > n_patches)
    throw argument_error("seismic patches: bad counts");
  if (p.corrupt_min < 1 || p.corrupt_min > p.corrupt_max ||
      p.corrupt_max > p.cols)
    throw argument_error("seismic patches: corrupt trace range invalid");
  const Index n_origins = p.rows - patch_rows + 1;
  const Index dim = patch_rows * p.cols;
  SampleSet set;
  set.clean.resize(dim, n_patches);
  set.corrupted.resize(dim, n_patches);
  set.noisy.assign(std::size_t(n_patches), 0);

  Rng pick(mix_seed(seed, 0x5eed));
  std::uniform_int_distribution<Index> ucorrupt(p.corrupt_min, p.corrupt_max);
  SectionPair pair;
  std::vector<Index> origins;
  Index section_index = 0;
  for (Index i = 0; i < n_patches; ++i) {
    if (i % n_origins == 0) {
      pair = make_section_pair(p, ucorrupt(pick),
                               mix_seed(seed, 0x5ec0 + std::uint64_t(section_index++)));
      origins.resize(std::size_t(n_origins));
      std::iota(origins.begin(), origins.end(), Index(0));
      std::shuffle(origins.begin(), origins.end(), pick);
    }
    const Index r0 = origins[std::size_t(i % n_origins)];
    const bool noisy = detail::spread_flag(i, n_patches, noisy_count);
    const Matrix clean_patch =
        pair.clean.amplitudes.block(r0, 0, patch_rows, p.cols);
    set.clean.col(i) = flatten_rowmajor(clean_patch);
    set.corrupted.col(i) =
        noisy ? flatten_rowmajor(Matrix(
                    pair.corrupted.amplitudes.block(r0, 0, patch_rows, p.cols)))
              : set.clean.col(i);
    set.noisy[std::size_t(i)] = noisy ? 1 : 0;
  }
  return set;
}

// ---------------------------------------------------------------------------
// Raymer-style velocity-porosity transform and synthetic well-log suites.

struct RockPhysics {
  double v_quartz = 5.94;   // km/s
  double v_clay = 3.41;
  double v_water = 1.50;
  double v_hydrate = 3.30;
  double rho_quartz = 2.65; // g/cc
  double rho_clay = 2.58;
  double rho_water = 1.03;
};

// Three regimes: matrix-dominated below 37% porosity, Wood suspension above
// 47%, slowness interpolation between.
inline double rhg_velocity(double phi, double v_ma, double v_f, double rho_ma,
                           double rho_f) {
  if (!(phi >= 0.0 && phi <= 1.0))
    throw argument_error("rhg: phi out of [0,1]");
  if (!(v_ma > 0.0 && v_f > 0.0 && rho_ma > 0.0 && rho_f > 0.0))
    throw argument_error("rhg: velocities and densities must be positive");
  // Endpoints are pinned so pure matrix and pure fluid come back exact,
  // the same contract std::lerp gives its ends.
  if (phi == 0.0) return v_ma;
  if (phi == 1.0) return v_f;
  auto v1 = [&](double f) { return (1.0 - f) * (1.0 - f) * v_ma + f * v_f; };
  auto v2 = [&](double f) {
    double rho = f * rho_f + (1.0 - f) * rho_ma;
    double slowness_sq =
        rho * (f / (rho_f * v_f * v_f) + (1.0 - f) / (rho_ma * v_ma * v_ma));
    return 1.0 / std::sqrt(slowness_sq);
  };
  if (phi < 0.37) return v1(phi);
  if (phi > 0.47) return v2(phi);
  double inv = (0.47 - phi) / (0.10 * v1(phi)) + (phi - 0.37) / (0.10 * v2(phi));
  return 1.0 / inv;
}

// Time-average matrix velocity over the quartz/clay split; hydrate enters the
// transform only through effective porosity phi * (1 - sh).
inline double matrix_velocity(double vsh, const RockPhysics& rock) {
  return 1.0 / (vsh / rock.v_clay + (1.0 - vsh) / rock.v_quartz);
}

inline double matrix_density(double vsh, const RockPhysics& rock) {
  return vsh * rock.rho_clay + (1.0 - vsh) * rock.rho_quartz;
}

inline double well_vp(double phi, double vsh, double sh,
                      const RockPhysics& rock) {
  double phi_eff = phi * (1.0 - sh);
  return rhg_velocity(phi_eff, matrix_velocity(vsh, rock),
                      rock.v_water, matrix_density(vsh, rock), rock.rho_water);
}

enum class WellSource : std::uint8_t { Synthetic1 = 0, KGBasin = 1, MtElbert = 2 };

struct WellRanges {
  double phi_lo, phi_hi;
  double vsh_lo, vsh_hi;
  double sh_lo, sh_hi;
};

inline WellRanges well_ranges(WellSource src) {
  switch (src) {
    case WellSource::Synthetic1: return {0.30, 0.60, 0.50, 0.80, 0.00, 0.20};
    case WellSource::KGBasin:    return {0.00, 0.90, 0.85, 0.95, 0.00, 0.30};
    case WellSource::MtElbert:   return {0.35, 0.45, 0.00, 0.40, 0.00, 0.60};
  }
  throw argument_error("well ranges: unknown source row");
}

inline constexpr Index well_log_count = 4;  // phi, vsh, sh, vp
inline constexpr double mute_sentinel = -0.1;

// Min/max normalization bounds per property. The vp bounds come from scanning
// the transform over the row's effective-porosity span at both vsh extremes
// (vp is monotone in vsh), padded 1% so values sit strictly inside (0,1).
inline std::pair<Vector, Vector> well_norm_bounds(const WellRanges& r,
                                                  const RockPhysics& rock) {
  Vector lo(well_log_count), hi(well_log_count);
  lo[0] = r.phi_lo; hi[0] = r.phi_hi;
  lo[1] = r.vsh_lo; hi[1] = r.vsh_hi;
  lo[2] = r.sh_lo;  hi[2] = r.sh_hi;
  double fe_lo = r.phi_lo * (1.0 - r.sh_hi);
  double fe_hi = r.phi_hi * (1.0 - r.sh_lo);
  double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
  const Index steps = 2000;
  for (Index k = 0; k <= steps; ++k) {
    double fe = fe_lo + (fe_hi - fe_lo) * double(k) / double(steps);
    for (double vsh : {r.vsh_lo, r.vsh_hi}) {
      double v = rhg_velocity(fe, matrix_velocity(vsh, rock), rock.v_water,
                              matrix_density(vsh, rock), rock.rho_water);
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
  }
  for (Index j = 0; j < 3; ++j) {
    double pad = 0.01 * std::max(hi[j] - lo[j], 1e-12);
    lo[j] -= pad;
    hi[j] += pad;
  }
  double vpad = 0.01 * std::max(vmax - vmin, 1e-12);
  lo[3] = vmin - vpad;
  hi[3] = vmax + vpad;
  return {lo, hi};
}

// Columns: phi, vsh, sh, vp; one row per depth sample; values min-max
// normalized into (0,1) with the bounds above. Fresh suites carry
// corrupted == clean and an all-zero mask.
struct WellLogSuite {
  Matrix clean;
  Matrix corrupted;
  MaskMatrix mask;

  Index length() const { return clean.rows(); }
};

inline std::vector<WellLogSuite> synth_well_suite(
    const WellRanges& ranges, Index count, Index length,
    double max_adjacent_change = 0.2,
    const RockPhysics& rock = RockPhysics{}, std::uint64_t seed = 0) {
  if (count < 0) throw argument_error("well suite: count must be >= 0");
  if (length < 2) throw argument_error("well suite: length must be >= 2");
  if (!(max_adjacent_change > 0.0 && max_adjacent_change < 1.0))
    throw argument_error("well suite: adjacent change bound out of (0,1)");
  if (!(ranges.phi_lo >= 0.0 && ranges.phi_hi <= 1.0 &&
        ranges.phi_lo <= ranges.phi_hi && ranges.vsh_lo >= 0.0 &&
        ranges.vsh_hi <= 1.0 && ranges.vsh_lo <= ranges.vsh_hi &&
        ranges.sh_lo >= 0.0 && ranges.sh_hi <= 1.0 &&
        ranges.sh_lo <= ranges.sh_hi))
    throw argument_error("well suite: ranges must nest inside [0,1]");

  auto [lo, hi] = well_norm_bounds(ranges, rock);
  const double eps_phi = 0.02 * (ranges.phi_hi - ranges.phi_lo);
  const double eps_vsh = 0.02 * (ranges.vsh_hi - ranges.vsh_lo);
  const double eps_sh = 0.02 * (ranges.sh_hi - ranges.sh_lo);
  const double eps_vp = 0.02 * (hi[3] - lo[3]);

  std::vector<WellLogSuite> suites;
  suites.reserve(std::size_t(count));
  for (Index s = 0; s < count; ++s) {
    Rng rng(mix_seed(seed, std::uint64_t(s)));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> ustep(-max_adjacent_change,
                                                 max_adjacent_change);
    Matrix raw(length, well_log_count);
    double phi = ranges.phi_lo + u01(rng) * (ranges.phi_hi - ranges.phi_lo);
    double vsh = ranges.vsh_lo + u01(rng) * (ranges.vsh_hi - ranges.vsh_lo);
    double sh = ranges.sh_lo + u01(rng) * (ranges.sh_hi - ranges.sh_lo);
    double vp = well_vp(phi, vsh, sh, rock);
    raw.row(0) << phi, vsh, sh, vp;
    for (Index i = 1; i < length; ++i) {
      double u_phi = ustep(rng), u_vsh = ustep(rng), u_sh = ustep(rng);
      double scale = 1.0;
      double nphi = phi, nvsh = vsh, nsh = sh, nvp = vp;
      for (int tries = 0; tries < 32; ++tries) {
        nphi = std::clamp(phi + scale * u_phi * std::max(std::abs(phi), eps_phi),
                          ranges.phi_lo, ranges.phi_hi);
        nvsh = std::clamp(vsh + scale * u_vsh * std::max(std::abs(vsh), eps_vsh),
                          ranges.vsh_lo, ranges.vsh_hi);
        nsh = std::clamp(sh + scale * u_sh * std::max(std::abs(sh), eps_sh),
                         ranges.sh_lo, ranges.sh_hi);
        nvp = well_vp(nphi, nvsh, nsh, rock);
        if (std::abs(nvp - vp) <=
            max_adjacent_change * std::max(std::abs(vp), eps_vp))
          break;
        scale *= 0.5;  // derived vp must honor the same adjacency bound
      }
      phi = nphi; vsh = nvsh; sh = nsh; vp = nvp;
      raw.row(i) << phi, vsh, sh, vp;
    }
    WellLogSuite suite;
    suite.clean.resize(length, well_log_count);
    for (Index j = 0; j < well_log_count; ++j)
      suite.clean.col(j) = (raw.col(j).array() - lo[j]) / (hi[j] - lo[j]);
    suite.corrupted = suite.clean;
    suite.mask = MaskMatrix::Zero(length, well_log_count);
    suites.push_back(std::move(suite));
  }
  return suites;
}

enum class WellCorruptMode : std::uint8_t { Mute = 0, Noise = 1 };

// Corrupt one specific log: ceil(fraction * length) points, contiguous block
// or scattered; Mute writes the sentinel, Noise applies up to 10% local-scale
// perturbation. Composes with existing corruption (mask accumulates).
inline WellLogSuite corrupt_well_log(const WellLogSuite& suite, Index log_index,
                                     WellCorruptMode mode, double fraction,
                                     bool contiguous, std::uint64_t seed) {
  if (log_index < 0 || log_index >= well_log_count)
    throw argument_error("corrupt well: log index out of range");
  if (!(fraction >= 0.1 && fraction <= 0.4))
    throw argument_error("corrupt well: fraction out of [0.1, 0.4]");
  WellLogSuite out = suite;
  const Index len = suite.length();
  const auto n_pts = Index(std::ceil(fraction * double(len)));
  Rng rng(seed);
  std::vector<Index> pts;
  if (contiguous) {
    std::uniform_int_distribution<Index> ustart(0, len - n_pts);
    Index start = ustart(rng);
    pts.resize(std::size_t(n_pts));
    std::iota(pts.begin(), pts.end(), start);
  } else {
    pts = detail::pick_distinct(len, n_pts, rng);
  }
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  for (Index i : pts) {
    if (mode == WellCorruptMode::Mute)
      out.corrupted(i, log_index) = mute_sentinel;
    else
      out.corrupted(i, log_index) *= (1.0 + u(rng));
    out.mask(i, log_index) = 1;
  }
  return out;
}

// Uniformly chosen log, then corrupt_well_log.
inline WellLogSuite corrupt_well_suite(const WellLogSuite& suite,
                                       WellCorruptMode mode, double fraction,
                                       bool contiguous, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0xc0));
  std::uniform_int_distribution<Index> ulog(0, well_log_count - 1);
  return corrupt_well_log(suite, ulog(rng), mode, fraction, contiguous,
                          mix_seed(seed, 0xc1));
}

// Flattened m x 4 depth windows. Each suite gets `variants` corrupted copies
// (alternating mute/noise, random log, fraction in [0.1, 0.4]); image i picks
// suite, variant (0 = clean) and depth origin from its own derived stream.
inline SampleSet make_well_images(const WellRanges& ranges,
                                  const RockPhysics& rock, Index n_suites,
                                  Index suite_len, Index variants,
                                  Index window_m, Index n_images,
                                  std::uint64_t seed) {
  if (n_suites < 1 || variants < 1)
    throw argument_error("well images: need suites and variants");
  if (window_m < 1 || window_m > suite_len)
    throw argument_error("well images: window out of range");
  std::vector<WellLogSuite> clean_suites =
      synth_well_suite(ranges, n_suites, suite_len, 0.2, rock,
                       mix_seed(seed, 0xa0));
  std::vector<std::vector<WellLogSuite>> corrupted(
      static_cast<std::size_t>(n_suites));
  for (Index s = 0; s < n_suites; ++s) {
    corrupted[std::size_t(s)].reserve(std::size_t(variants));
    for (Index v = 0; v < variants; ++v) {
      Rng rng(mix_seed(seed, 0xb0 + std::uint64_t(s) * 131 + std::uint64_t(v)));
      std::uniform_real_distribution<double> ufrac(0.1, 0.4);
      WellCorruptMode mode =
          v % 2 == 0 ? WellCorruptMode::Mute : WellCorruptMode::Noise;
      const bool contiguous = rng() % 2 == 0;
      const double fraction = ufrac(rng);
      const std::uint64_t sub_seed = rng();
      corrupted[std::size_t(s)].push_back(
          corrupt_well_suite(clean_suites[std::size_t(s)], mode, fraction,
                             contiguous, sub_seed));
    }
  }

  const Index dim = window_m * well_log_count;
  SampleSet set;
  set.clean.resize(dim, n_images);
  set.corrupted.resize(dim, n_images);
  set.noisy.assign(std::size_t(n_images), 0);
  for (Index i = 0; i < n_images; ++i) {
    Rng rng(mix_seed(seed, 0xd000 + std::uint64_t(i)));
    std::uniform_int_distribution<Index> usuite(0, n_suites - 1);
    std::uniform_int_distribution<Index> uvar(0, variants);  // 0 = clean
    std::uniform_int_distribution<Index> uorig(0, suite_len - window_m);
    const Index s = usuite(rng);
    const Index v = uvar(rng);
    const Index o = uorig(rng);
    const WellLogSuite& base = clean_suites[std::size_t(s)];
    set.clean.col(i) = flatten_rowmajor(
        Matrix(base.clean.block(o, 0, window_m, well_log_count)));
    if (v == 0) {
      set.corrupted.col(i) = set.clean.col(i);
    } else {
      const WellLogSuite& var = corrupted[std::size_t(s)][std::size_t(v - 1)];
      set.corrupted.col(i) = flatten_rowmajor(
          Matrix(var.corrupted.block(o, 0, window_m, well_log_count)));
      bool touched =
          var.mask.block(o, 0, window_m, well_log_count).sum() > 0;
      set.noisy[std::size_t(i)] = touched ? 1 : 0;
    }
  }
  return set;
}

}  // namespace sdae

#endif
