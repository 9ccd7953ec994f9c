#include "psi/ape.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace psi {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double exploration_bonus(double a, long long pulls) {
  if (pulls < 1)
    throw std::logic_error("exploration_bonus: arm has no samples");
  if (a < 0.0)
    throw std::invalid_argument("exploration_bonus: parameter must be >= 0");
  return 0.4 * std::sqrt(a / static_cast<double>(pulls));
}

double tune_a(double h1, long long T, int K) {
  if (T <= K) throw std::invalid_argument("tune_a: requires T > K");
  if (!(h1 > 0.0)) throw std::invalid_argument("tune_a: requires h1 > 0");
  return (25.0 / 36.0) * static_cast<double>(T - K) / h1;
}

namespace detail {

BtCt choose_from_margins(const MarginMatrix& margins,
                         std::span<const double> bonuses,
                         const EmpiricalState& state) {
  const int K = margins.size();
  if (K < 2) throw std::invalid_argument("select_bt_ct: need at least 2 arms");

  // One pass per arm over its margin row: the smallest bonus-narrowed margin
  // decides confidence (and the fallback score), the smallest bonus-widened
  // margin scores ambiguity among the non-confident arms.
  BtCt out;
  double best_ambiguous = -kInf;
  double best_fallback = kInf;
  int fallback = -1;
  const double* beta = bonuses.data();
  for (int i = 0; i < K; ++i) {
    const double* row = margins.row(i);
    double narrowed = kInf, widened = kInf;
    for (int j = 0; j < K; ++j) {
      if (j == i) continue;
      const double nj = row[j] - beta[j];
      const double wj = row[j] + beta[j];
      narrowed = narrowed < nj ? narrowed : nj;
      widened = widened < wj ? widened : wj;
    }
    if (!(narrowed - beta[i] > 0.0) && widened + beta[i] > best_ambiguous) {
      best_ambiguous = widened + beta[i];
      out.b = i;
    }
    if (narrowed - beta[i] < best_fallback) {
      best_fallback = narrowed - beta[i];
      fallback = i;
    }
  }
  if (out.b < 0) out.b = fallback;  // every arm cleared its bonuses

  double best = kInf;
  const double* brow = margins.row(out.b);
  for (int j = 0; j < K; ++j) {
    if (j == out.b) continue;
    const double v = brow[j] - beta[j];
    if (v < best) {
      best = v;
      out.c = j;
    }
  }
  out.pull = state.pulls(out.c) < state.pulls(out.b) ? out.c : out.b;
  return out;
}

BtCt ApeEngine::choose(const EmpiricalState& state) const {
  return choose_from_margins(margins_, bonuses_, state);
}

double plug_in_hardness(const EmpiricalState& state, double floor) {
  const std::vector<int> all = ApeEngine::all_arms(state.arms());
  const std::vector<double> rows = state.means_of(all);
  const SetGaps gaps = unified_set_gaps(rows.data(), state.arms(), state.dims());
  double h = 0.0;
  for (double g : gaps.gap) {
    const double eff = std::max(g, floor);
    if (!std::isinf(eff)) h += 1.0 / (eff * eff);
  }
  return h;
}

}  // namespace detail

std::vector<int> opt_set(const EmpiricalState& state,
                         std::span<const double> bonuses) {
  const int K = state.arms();
  const std::vector<int> all = detail::ApeEngine::all_arms(K);
  const std::vector<double> rows = state.means_of(all);
  MarginMatrix margins{rows.data(), K, state.dims()};
  std::vector<int> out;
  for (int i = 0; i < K; ++i) {
    bool keep = true;
    for (int j = 0; j < K && keep; ++j)
      if (j != i &&
          !(margins.max_margin(i, j) - bonuses[i] - bonuses[j] > 0.0))
        keep = false;
    if (keep) out.push_back(i);
  }
  return out;
}

BtCt select_bt_ct(const EmpiricalState& state,
                  std::span<const double> bonuses) {
  const int K = state.arms();
  const std::vector<int> all = detail::ApeEngine::all_arms(K);
  const std::vector<double> rows = state.means_of(all);
  MarginMatrix margins{rows.data(), K, state.dims()};
  return detail::choose_from_margins(margins, bonuses, state);
}

double z1_diagnostic(const EmpiricalState& state,
                     std::span<const double> bonuses) {
  const int K = state.arms();
  const std::vector<int> all = detail::ApeEngine::all_arms(K);
  const std::vector<int> front = empirical_pareto_set(state, all);
  const std::vector<double> rows = state.means_of(all);
  MarginMatrix margins{rows.data(), K, state.dims()};
  double z = kInf;
  for (int i : front)
    for (int j : front)
      if (j != i)
        z = std::min(z, margins.max_margin(i, j) - bonuses[i] - bonuses[j]);
  return z;
}

double z2_diagnostic(const EmpiricalState& state,
                     std::span<const double> bonuses) {
  const int K = state.arms();
  const std::vector<int> all = detail::ApeEngine::all_arms(K);
  const std::vector<int> front = empirical_pareto_set(state, all);
  std::vector<char> in_front(K, 0);
  for (int i : front) in_front[i] = 1;
  const std::vector<double> rows = state.means_of(all);
  MarginMatrix margins{rows.data(), K, state.dims()};
  double z = kInf;
  for (int i = 0; i < K; ++i) {
    if (in_front[i]) continue;
    double inner = -kInf;
    for (int j = 0; j < K; ++j)
      if (j != i)
        inner = std::max(inner,
                         margins.min_margin(i, j) - bonuses[i] - bonuses[j]);
    z = std::min(z, inner);
  }
  return z;
}

}  // namespace psi
