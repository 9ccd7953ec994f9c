#include "psi/empirical.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "psi/margins.hpp"

namespace psi {

EmpiricalState::EmpiricalState(int arms, int dims)
    : arms_(arms),
      dims_(dims),
      sums_(static_cast<std::size_t>(arms) * dims, 0.0),
      counts_(arms, 0) {
  if (arms < 1 || dims < 1)
    throw std::invalid_argument("EmpiricalState: need arms >= 1, dims >= 1");
}

void EmpiricalState::add(int arm, const double* sample) {
  double* row = sums_.data() + static_cast<std::size_t>(arm) * dims_;
  for (int d = 0; d < dims_; ++d) row[d] += sample[d];
  ++counts_[arm];
}

void EmpiricalState::mean(int arm, double* out) const {
  if (counts_[arm] == 0)
    throw std::logic_error("EmpiricalState: arm " + std::to_string(arm) +
                           " has no samples");
  const double* row = sums_.data() + static_cast<std::size_t>(arm) * dims_;
  const double inv = 1.0 / static_cast<double>(counts_[arm]);
  for (int d = 0; d < dims_; ++d) out[d] = row[d] * inv;
}

std::vector<double> EmpiricalState::means_of(std::span<const int> arms) const {
  std::vector<double> rows(arms.size() * dims_);
  for (std::size_t i = 0; i < arms.size(); ++i)
    mean(arms[i], rows.data() + i * dims_);
  return rows;
}

std::vector<int> empirical_pareto_set(const EmpiricalState& state,
                                      std::span<const int> active) {
  const std::vector<double> rows = state.means_of(active);
  const std::vector<int> front =
      strict_front(rows.data(), static_cast<int>(active.size()), state.dims());
  std::vector<int> out;
  out.reserve(front.size());
  for (int pos : front) out.push_back(active[pos]);
  return out;
}

std::vector<double> empirical_gaps(const EmpiricalState& state,
                                   std::span<const int> active) {
  if (active.size() < 2)
    throw std::invalid_argument(
        "empirical_gaps: need at least two active arms");
  const std::vector<double> rows = state.means_of(active);
  return unified_set_gaps(rows.data(), static_cast<int>(active.size()),
                          state.dims())
      .gap;
}

SurvivorSplit select_survivors(std::span<const double> gaps,
                               std::span<const char> in_front, int keep) {
  const int n = static_cast<int>(gaps.size());
  if (in_front.size() != gaps.size())
    throw std::invalid_argument("select_survivors: mask size mismatch");
  if (keep < 0 || keep >= n)
    throw std::invalid_argument("select_survivors: keep must be in [0, n)");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (gaps[a] != gaps[b]) return gaps[a] < gaps[b];
    if (in_front[a] != in_front[b]) return in_front[a] > in_front[b];
    return a < b;
  });

  SurvivorSplit split;
  split.survivors.assign(order.begin(), order.begin() + keep);
  split.removed.assign(order.begin() + keep, order.end());
  std::sort(split.survivors.begin(), split.survivors.end());
  std::sort(split.removed.begin(), split.removed.end());
  return split;
}

}  // namespace psi
