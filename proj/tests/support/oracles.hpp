// Test-side reference implementations, written straight from the branch
// definitions and kept independent of the library code paths they check.
#pragma once

#include <algorithm>
#include <limits>
#include <random>
#include <vector>

#include "psi/matrix.hpp"

namespace oracle {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double big_m(const psi::MeanMatrix& t, int i, int j) {
  double best = -kInf;
  for (int d = 0; d < t.dims(); ++d) best = std::max(best, t(i, d) - t(j, d));
  return best;
}

inline double little_m(const psi::MeanMatrix& t, int i, int j) {
  double best = kInf;
  for (int d = 0; d < t.dims(); ++d) best = std::min(best, t(j, d) - t(i, d));
  return best;
}

// Plain O(K^2 D) pairwise dominance scan.
inline std::vector<int> brute_pareto(const psi::MeanMatrix& t) {
  std::vector<int> out;
  for (int i = 0; i < t.arms(); ++i) {
    bool dominated = false;
    for (int j = 0; j < t.arms() && !dominated; ++j) {
      if (j == i) continue;
      bool weak = true, strict = false;
      for (int d = 0; d < t.dims(); ++d) {
        if (t(i, d) > t(j, d)) weak = false;
        if (t(i, d) < t(j, d)) strict = true;
      }
      dominated = weak && strict;
    }
    if (!dominated) out.push_back(i);
  }
  return out;
}

// Branch-definition gaps, transcribed literally.
inline std::vector<double> brute_gaps(const psi::MeanMatrix& t) {
  const auto pareto = brute_pareto(t);
  std::vector<char> opt(t.arms(), 0);
  for (int i : pareto) opt[i] = 1;
  std::vector<double> gap(t.arms(), 0.0);
  for (int i = 0; i < t.arms(); ++i) {
    if (opt[i]) continue;
    double best = -kInf;
    for (int j : pareto) best = std::max(best, little_m(t, i, j));
    gap[i] = best;
  }
  for (int i : pareto) {
    double dplus = kInf, dminus = kInf;
    for (int j : pareto)
      if (j != i)
        dplus = std::min(dplus, std::min(big_m(t, i, j), big_m(t, j, i)));
    for (int j = 0; j < t.arms(); ++j)
      if (!opt[j])
        dminus = std::min(dminus, std::max(big_m(t, j, i), 0.0) + gap[j]);
    gap[i] = std::min(dplus, dminus);
  }
  return gap;
}

// Hypervolume by inclusion-exclusion; exponential, for tiny point sets only.
inline double hv_inclusion_exclusion(const std::vector<std::vector<double>>& pts,
                                     const std::vector<double>& ref) {
  const int n = static_cast<int>(pts.size());
  const int d = static_cast<int>(ref.size());
  double total = 0.0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    double vol = 1.0;
    for (int k = 0; k < d; ++k) {
      double lo = kInf;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) lo = std::min(lo, pts[i][k]);
      vol *= lo - ref[k];
    }
    total += __builtin_popcount(mask) % 2 == 1 ? vol : -vol;
  }
  return total;
}

// Random instance with continuous means (gaps nonzero almost surely).
inline psi::MeanMatrix random_instance(std::mt19937_64& rng, int max_arms = 8,
                                       int max_dims = 4) {
  std::uniform_int_distribution<int> karms(2, max_arms);
  std::uniform_int_distribution<int> kdims(1, max_dims);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int K = karms(rng), D = kdims(rng);
  std::vector<double> data(static_cast<std::size_t>(K) * D);
  for (auto& v : data) v = unif(rng);
  return {K, D, std::move(data)};
}

// Classic Successive Rejects for one-dimensional rewards: cumulative means,
// drop the empirically worst arm each round (ties drop the highest index).
template <typename S>
int reference_successive_rejects(S& sampler, long long budget) {
  const int K = sampler.arms();
  const double norm = [&] {
    double acc = 0.5;
    for (int i = 2; i <= K; ++i) acc += 1.0 / i;
    return acc;
  }();
  std::vector<int> active(K);
  for (int i = 0; i < K; ++i) active[i] = i;
  std::vector<double> sum(K, 0.0);
  std::vector<long long> count(K, 0);
  long long prev = 0;
  double x = 0.0;
  for (int r = 1; r <= K - 1; ++r) {
    const auto n_r = static_cast<long long>(
        std::ceil(static_cast<double>(budget - K) / (norm * (K + 1 - r)) -
                  1e-9));
    for (int arm : active) {
      for (long long s = prev; s < n_r; ++s) {
        sampler.sample(arm, &x);
        sum[arm] += x;
        ++count[arm];
      }
    }
    prev = n_r;
    int worst = 0;
    for (std::size_t p = 1; p < active.size(); ++p) {
      const double a = sum[active[p]] / count[active[p]];
      const double b = sum[active[worst]] / count[active[worst]];
      if (a <= b) worst = static_cast<int>(p);
    }
    active.erase(active.begin() + worst);
  }
  return active.front();
}

}  // namespace oracle
