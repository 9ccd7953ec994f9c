#include "psi/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "psi/errors.hpp"
#include "psi/margins.hpp"

namespace psi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_pair(const MeanMatrix& theta, int i, int j) {
  check_arm(theta, i);
  check_arm(theta, j);
  if (i == j) throw std::invalid_argument("margin requires two distinct arms");
}

std::vector<char> pareto_mask(const MeanMatrix& theta, const MarginMatrix& m) {
  const int K = theta.arms();
  std::vector<char> optimal(K, 1);
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < K; ++j) {
      if (j == i) continue;
      // dominated: componentwise <= (margin_max <= 0) and not an exact copy
      if (m.max_margin(i, j) <= 0.0 &&
          !(m.max_margin(i, j) == 0.0 && m.max_margin(j, i) == 0.0)) {
        optimal[i] = 0;
        break;
      }
    }
  }
  return optimal;
}

// Gaps from the explicit optimal/sub-optimal branch definitions.
std::vector<double> branch_gaps(const MeanMatrix& theta, const MarginMatrix& m,
                                const std::vector<char>& optimal) {
  const int K = theta.arms();
  std::vector<double> gap(K);
  for (int i = 0; i < K; ++i) {
    if (optimal[i]) continue;
    double best = -kInf;
    for (int j = 0; j < K; ++j)
      if (optimal[j]) best = std::max(best, m.min_margin(i, j));
    gap[i] = best;
  }
  for (int i = 0; i < K; ++i) {
    if (!optimal[i]) continue;
    double close_optimal = kInf;
    double close_suboptimal = kInf;
    for (int j = 0; j < K; ++j) {
      if (j == i) continue;
      if (optimal[j])
        close_optimal = std::min(
            close_optimal, std::min(m.max_margin(i, j), m.max_margin(j, i)));
      else
        close_suboptimal = std::min(
            close_suboptimal, std::max(m.max_margin(j, i), 0.0) + gap[j]);
    }
    gap[i] = std::min(close_optimal, close_suboptimal);
  }
  return gap;
}

}  // namespace

double margin_max(const MeanMatrix& theta, int i, int j) {
  check_pair(theta, i, j);
  double best = theta(i, 0) - theta(j, 0);
  for (int d = 1; d < theta.dims(); ++d) {
    const double v = theta(i, d) - theta(j, d);
    best = best > v ? best : v;
  }
  return best;
}

double margin_min(const MeanMatrix& theta, int i, int j) {
  return -margin_max(theta, i, j);
}

bool dominated_by(const MeanMatrix& theta, int i, int j) {
  check_pair(theta, i, j);
  return margin_max(theta, i, j) <= 0.0 && !theta.rows_equal(i, j);
}

std::vector<int> pareto_set(const MeanMatrix& theta) {
  MarginMatrix m{theta.flat().data(), theta.arms(), theta.dims()};
  const auto mask = pareto_mask(theta, m);
  std::vector<int> out;
  for (int i = 0; i < theta.arms(); ++i)
    if (mask[i]) out.push_back(i);
  return out;
}

double gap_suboptimal(const MeanMatrix& theta, int i) {
  check_arm(theta, i);
  MarginMatrix m{theta.flat().data(), theta.arms(), theta.dims()};
  const auto mask = pareto_mask(theta, m);
  if (mask[i])
    throw std::invalid_argument("gap_suboptimal: arm " + std::to_string(i) +
                                " is Pareto optimal");
  double best = -kInf;
  for (int j = 0; j < theta.arms(); ++j)
    if (mask[j]) best = std::max(best, m.min_margin(i, j));
  return best;
}

double gap_optimal(const MeanMatrix& theta, int i) {
  check_arm(theta, i);
  MarginMatrix m{theta.flat().data(), theta.arms(), theta.dims()};
  const auto mask = pareto_mask(theta, m);
  if (!mask[i])
    throw std::invalid_argument("gap_optimal: arm " + std::to_string(i) +
                                " is sub-optimal");
  return branch_gaps(theta, m, mask)[i];
}

double gap_unified(const MeanMatrix& theta, int i) {
  check_arm(theta, i);
  const SetGaps g =
      unified_set_gaps(theta.flat().data(), theta.arms(), theta.dims());
  return g.gap[i];
}

GapProfile complexity_profile(const MeanMatrix& theta) {
  const int K = theta.arms();
  MarginMatrix m{theta.flat().data(), theta.arms(), theta.dims()};
  const auto mask = pareto_mask(theta, m);

  GapProfile profile;
  profile.delta = branch_gaps(theta, m, mask);
  profile.delta_star.resize(K);
  for (int i = 0; i < K; ++i) {
    double lo = kInf;
    for (int j = 0; j < K; ++j)
      if (j != i) lo = std::min(lo, m.max_margin(i, j));
    profile.delta_star[i] = -lo;
    if (mask[i]) profile.pareto.push_back(i);
    if (profile.delta[i] == 0.0)
      throw degenerate_instance_error(
          "complexity_profile: arm " + std::to_string(i) +
          " has zero gap (tied means on the Pareto boundary)");
  }

  std::vector<double> sorted = profile.delta;
  std::sort(sorted.begin(), sorted.end());
  profile.h1 = 0.0;
  profile.h2 = 0.0;
  for (int r = 0; r < K; ++r) {
    if (std::isinf(sorted[r])) continue;  // infinite gaps contribute nothing
    profile.h1 += 1.0 / (sorted[r] * sorted[r]);
    profile.h2 = std::max(profile.h2, (r + 1) / (sorted[r] * sorted[r]));
  }
  return profile;
}

RelaxedGapProfile relaxed_profile(const MeanMatrix& theta, int k) {
  if (k < 1) throw std::invalid_argument("relaxed_profile: k must be >= 1");
  const GapProfile profile = complexity_profile(theta);

  std::vector<double> optimal_gaps;
  for (int i : profile.pareto) optimal_gaps.push_back(profile.delta[i]);
  std::sort(optimal_gaps.begin(), optimal_gaps.end(), std::greater<>());

  RelaxedGapProfile out;
  out.k = k;
  out.omega_k = static_cast<std::size_t>(k) <= optimal_gaps.size()
                    ? optimal_gaps[k - 1]
                    : 0.0;
  out.delta_k = profile.delta;
  for (int i : profile.pareto) out.delta_k[i] = std::max(out.delta_k[i], out.omega_k);

  std::vector<double> sorted = out.delta_k;
  std::sort(sorted.begin(), sorted.end());
  out.h2_k = 0.0;
  for (std::size_t r = 0; r < sorted.size(); ++r) {
    if (std::isinf(sorted[r])) continue;
    out.h2_k = std::max(out.h2_k, (r + 1) / (sorted[r] * sorted[r]));
  }
  return out;
}

}  // namespace psi
