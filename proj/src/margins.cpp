#include "psi/margins.hpp"

#include <algorithm>
#include <limits>

#include "psi/kernels.hpp"

namespace psi {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

MarginMatrix::MarginMatrix(const double* rows, int n, int d)
    : n_(n),
      d_(d),
      cols_(static_cast<std::size_t>(n) * d),
      data_(static_cast<std::size_t>(n) * n),
      scratch_(n) {
  for (int j = 0; j < n; ++j)
    for (int r = 0; r < d; ++r)
      cols_[static_cast<std::size_t>(r) * n + j] =
          rows[static_cast<std::size_t>(j) * d + r];
  for (int i = 0; i < n; ++i) {
    kern::margin_max_cm(cols_.data(), n_, d_,
                        rows + static_cast<std::size_t>(i) * d,
                        data_.data() + static_cast<std::size_t>(i) * n_);
    data_[static_cast<std::size_t>(i) * n_ + i] = 0.0;
  }
}

void MarginMatrix::update_point(const double* rows, int i) {
  const double* pi = rows + static_cast<std::size_t>(i) * d_;
  for (int r = 0; r < d_; ++r)
    cols_[static_cast<std::size_t>(r) * n_ + i] = pi[r];
  kern::margin_max_cm(cols_.data(), n_, d_, pi,
                      data_.data() + static_cast<std::size_t>(i) * n_);
  data_[static_cast<std::size_t>(i) * n_ + i] = 0.0;
  // column i: m(j, i) = max_d (row_j[d] - row_i[d])
  for (int j = 0; j < n_; ++j) {
    if (j == i) continue;
    const double* pj = rows + static_cast<std::size_t>(j) * d_;
    double best = pj[0] - pi[0];
    for (int r = 1; r < d_; ++r) {
      const double v = pj[r] - pi[r];
      best = best > v ? best : v;
    }
    data_[static_cast<std::size_t>(j) * n_ + i] = best;
  }
}

SetGaps unified_set_gaps(const MarginMatrix& margins) {
  const int n = margins.size();
  SetGaps out;
  out.displacement.resize(n);
  out.gap.resize(n);
  out.front.resize(n);

  // displacement[i] = max_{j != i} -m(i,j) = -(min_{j != i} m(i,j))
  for (int i = 0; i < n; ++i) {
    double lo = kInf;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      lo = std::min(lo, margins.max_margin(i, j));
    }
    out.displacement[i] = n > 1 ? -lo : -kInf;
    out.front[i] = out.displacement[i] < 0.0 ? 1 : 0;
  }

  for (int i = 0; i < n; ++i) {
    if (!out.front[i]) {
      out.gap[i] = out.displacement[i];
      continue;
    }
    double g = kInf;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double cross = std::max(margins.max_margin(j, i), 0.0) +
                           std::max(out.displacement[j], 0.0);
      g = std::min(g, std::min(margins.max_margin(i, j), cross));
    }
    out.gap[i] = g;
  }
  return out;
}

SetGaps unified_set_gaps(const double* rows, int n, int d) {
  return unified_set_gaps(MarginMatrix{rows, n, d});
}

std::vector<int> strict_front(const double* rows, int n, int d) {
  MarginMatrix margins{rows, n, d};
  std::vector<int> front;
  for (int i = 0; i < n; ++i) {
    bool keep = true;
    for (int j = 0; j < n && keep; ++j)
      if (j != i && !(margins.max_margin(i, j) > 0.0)) keep = false;
    if (keep) front.push_back(i);
  }
  return front;
}

}  // namespace psi
