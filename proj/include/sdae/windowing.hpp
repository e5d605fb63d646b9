#ifndef SDAE_WINDOWING_HPP
#define SDAE_WINDOWING_HPP

#include "sdae/core.hpp"

namespace sdae {

struct WindowSpec {
  Index patch_rows = 1;
  Index patch_cols = 1;
  Index stride = 1;
};

inline void validate(const WindowSpec& w) {
  if (w.patch_rows < 1 || w.patch_cols < 1)
    throw argument_error("window: patch dims must be positive");
  if (w.stride < 1) throw argument_error("window: stride must be >= 1");
  if (w.stride > std::min(w.patch_rows, w.patch_cols))
    throw argument_error("window: stride exceeds patch size, coverage gaps");
}

// Origins 0, s, 2s, ... along one axis; when the stride does not land on the
// boundary the final window is snapped to extent - patch so coverage stays
// complete.
inline std::vector<Index> window_origins(Index extent, Index patch,
                                         Index stride) {
  if (patch > extent)
    throw argument_error("window: patch " + std::to_string(patch) +
                         " larger than extent " + std::to_string(extent));
  std::vector<Index> origins;
  for (Index o = 0; o + patch <= extent; o += stride) origins.push_back(o);
  if (origins.back() != extent - patch) origins.push_back(extent - patch);
  return origins;
}

struct PatchSet {
  std::vector<Matrix> patches;
  std::vector<std::pair<Index, Index>> origins;  // (row, col)
  Index src_rows = 0;
  Index src_cols = 0;
};

// Row-major origin order: all column positions for the first row offset, then
// the next row offset, and so on.
inline PatchSet slice(const Matrix& section, const WindowSpec& w) {
  validate(w);
  std::vector<Index> row_orig = window_origins(section.rows(), w.patch_rows, w.stride);
  std::vector<Index> col_orig = window_origins(section.cols(), w.patch_cols, w.stride);
  PatchSet out;
  out.src_rows = section.rows();
  out.src_cols = section.cols();
  out.patches.reserve(row_orig.size() * col_orig.size());
  out.origins.reserve(row_orig.size() * col_orig.size());
  for (Index r : row_orig)
    for (Index c : col_orig) {
      out.patches.push_back(section.block(r, c, w.patch_rows, w.patch_cols));
      out.origins.emplace_back(r, c);
    }
  return out;
}

// Coverage-weighted average: each cell is the mean of every patch value that
// landed on it.
inline Matrix recombine(const PatchSet& set) {
  if (set.patches.empty()) throw argument_error("recombine: no patches");
  if (set.patches.size() != set.origins.size())
    throw shape_error("recombine: patch/origin count mismatch");
  Matrix acc = Matrix::Zero(set.src_rows, set.src_cols);
  Matrix count = Matrix::Zero(set.src_rows, set.src_cols);
  for (std::size_t k = 0; k < set.patches.size(); ++k) {
    const Matrix& p = set.patches[k];
    auto [r, c] = set.origins[k];
    if (r < 0 || c < 0 || r + p.rows() > set.src_rows ||
        c + p.cols() > set.src_cols)
      throw shape_error("recombine: patch " + std::to_string(k) +
                        " exceeds source bounds");
    acc.block(r, c, p.rows(), p.cols()) += p;
    count.block(r, c, p.rows(), p.cols()).array() += 1.0;
  }
  if ((count.array() == 0.0).any()) {
    std::string cells;
    int listed = 0;
    for (Index i = 0; i < count.rows() && listed < 8; ++i)
      for (Index j = 0; j < count.cols() && listed < 8; ++j)
        if (count(i, j) == 0.0) {
          cells += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
          ++listed;
        }
    throw coverage_error("recombine: uncovered cells" + cells);
  }
  return acc.cwiseQuotient(count);
}

// slice -> flatten -> batched forward -> unflatten -> recombine.
inline Matrix denoise_section(const Matrix& section, const WindowSpec& w,
                              const Network& net) {
  validate(net);
  if (net.in_dim() != w.patch_rows * w.patch_cols ||
      net.out_dim() != net.in_dim())
    throw shape_error("denoise_section: net dims " +
                      std::to_string(net.in_dim()) + "->" +
                      std::to_string(net.out_dim()) + " do not match patch " +
                      std::to_string(w.patch_rows) + "x" +
                      std::to_string(w.patch_cols));
  PatchSet set = slice(section, w);
  const auto total = Index(set.patches.size());
  const Index chunk = 1024;
  for (Index start = 0; start < total; start += chunk) {
    const Index m = std::min(chunk, total - start);
    Matrix batch(net.in_dim(), m);
    for (Index k = 0; k < m; ++k)
      batch.col(k) = flatten_rowmajor(set.patches[std::size_t(start + k)]);
    Matrix out = forward(net, batch);
    for (Index k = 0; k < m; ++k)
      set.patches[std::size_t(start + k)] =
          unflatten_rowmajor(out.col(k), w.patch_rows, w.patch_cols);
  }
  return recombine(set);
}

}  // namespace sdae

#endif
