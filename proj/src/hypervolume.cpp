#include "psi/hypervolume.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "psi/pareto.hpp"

namespace psi {

namespace {

double hv_1d(std::vector<std::vector<double>>& pts, double ref) {
  double best = ref;
  for (const auto& p : pts) best = std::max(best, p[0]);
  return best - ref;
}

// Staircase sweep: scan x descending, accumulate strips above the covered y.
double hv_2d(std::vector<std::vector<double>>& pts, const double* ref) {
  std::sort(pts.begin(), pts.end(),
            [](const auto& a, const auto& b) { return a[0] > b[0]; });
  double covered_y = ref[1];
  double vol = 0.0;
  for (const auto& p : pts) {
    if (p[1] > covered_y) {
      vol += (p[0] - ref[0]) * (p[1] - covered_y);
      covered_y = p[1];
    }
  }
  return vol;
}

// Keep only points not dominated within the set (equal duplicates collapse).
void dominance_filter(std::vector<std::vector<double>>& pts) {
  std::vector<std::vector<double>> kept;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < pts.size() && !drop; ++j) {
      if (i == j) continue;
      bool le = true, lt = false;
      for (std::size_t d = 0; d < pts[i].size(); ++d) {
        if (pts[i][d] > pts[j][d]) le = false;
        if (pts[i][d] < pts[j][d]) lt = true;
      }
      drop = le && (lt || j < i);  // j < i breaks exact-duplicate ties
    }
    if (!drop) kept.push_back(pts[i]);
  }
  pts.swap(kept);
}

double hv_rec(std::vector<std::vector<double>> pts, const double* ref, int d) {
  if (pts.empty()) return 0.0;
  if (d == 1) return hv_1d(pts, ref[0]);
  if (d == 2) return hv_2d(pts, ref);

  dominance_filter(pts);
  // Slab sweep over the last coordinate, descending.
  std::sort(pts.begin(), pts.end(),
            [d](const auto& a, const auto& b) { return a[d - 1] > b[d - 1]; });
  double vol = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double hi = pts[k][d - 1];
    const double lo = k + 1 < pts.size() ? pts[k + 1][d - 1] : ref[d - 1];
    if (hi <= lo) continue;
    std::vector<std::vector<double>> slab;
    slab.reserve(k + 1);
    for (std::size_t j = 0; j <= k; ++j)
      slab.emplace_back(pts[j].begin(), pts[j].end() - 1);
    vol += (hi - lo) * hv_rec(std::move(slab), ref, d - 1);
  }
  return vol;
}

}  // namespace

double hypervolume(std::span<const std::vector<double>> points,
                   std::span<const double> ref) {
  const int d = static_cast<int>(ref.size());
  if (d < 1) throw std::invalid_argument("hypervolume: need D >= 1");
  std::vector<std::vector<double>> pts;
  pts.reserve(points.size());
  for (const auto& p : points) {
    if (p.size() != ref.size())
      throw std::invalid_argument("hypervolume: point/ref dimension mismatch");
    for (int k = 0; k < d; ++k)
      if (!(p[k] >= ref[k]))
        throw std::invalid_argument(
            "hypervolume: reference point must be weakly dominated by every "
            "point (violated in dimension " +
            std::to_string(k) + ")");
    pts.push_back(p);
  }
  return hv_rec(std::move(pts), ref.data(), d);
}

double hv_fraction(std::span<const int> recommended, const MeanMatrix& theta,
                   std::span<const double> ref) {
  if (ref.size() != static_cast<std::size_t>(theta.dims()))
    throw std::invalid_argument("hv_fraction: ref dimension mismatch");
  for (int arm : recommended) check_arm(theta, arm);
  if (recommended.empty()) return 0.0;

  auto rows_of = [&](std::span<const int> arms) {
    std::vector<std::vector<double>> rows;
    rows.reserve(arms.size());
    for (int a : arms) rows.emplace_back(theta.row(a).begin(), theta.row(a).end());
    return rows;
  };

  const std::vector<int> truth = pareto_set(theta);
  const double denom = hypervolume(rows_of(truth), ref);
  if (!(denom > 0.0))
    throw std::invalid_argument("hv_fraction: Pareto set has zero hypervolume");
  return hypervolume(rows_of(recommended), ref) / denom;
}

}  // namespace psi
