#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "psi/ege.hpp"
#include "psi/empirical.hpp"
#include "psi/errors.hpp"
#include "psi/margins.hpp"

namespace psi {

struct ApeConfig {
  double a = 0.0;             // exploration parameter, >= 0
  bool adapt = false;         // re-estimate the hardness online
  double adapt_floor = 1e-3;  // gap floor for the plug-in hardness estimate
};

/// Confidence bonus (2/5) * sqrt(a / pulls); decreasing in the pull count.
double exploration_bonus(double a, long long pulls);

/// Largest exploration parameter covered by the error guarantee:
/// (25/36) * (T - K) / h1. Callers may scale it to probe the sensitivity.
double tune_a(double h1, long long T, int K);

/// Arms whose empirical margins clear both bonuses against every other arm.
/// With zero bonuses this is exactly the empirical Pareto set.
std::vector<int> opt_set(const EmpiricalState& state,
                         std::span<const double> bonuses);

struct BtCt {
  int b = -1;     // most ambiguous candidate outside the confident set
  int c = -1;     // its closest challenger
  int pull = -1;  // the less explored of the two (ties pick b)
};

/// Sampling-rule target pair, computed from the state alone.
BtCt select_bt_ct(const EmpiricalState& state, std::span<const double> bonuses);

/// Diagnostics mirroring the analysis quantities; they drive no decision.
/// Empty minima follow the min over the empty set = +infinity convention.
double z1_diagnostic(const EmpiricalState& state,
                     std::span<const double> bonuses);
double z2_diagnostic(const EmpiricalState& state,
                     std::span<const double> bonuses);

struct ApeStep {
  long long t;
  int b, c, pulled;
  double z1, z2;
};

namespace detail {

// Incremental engine: the margin matrix is cached and only the pulled arm's
// row/column is recomputed each step. Must stay consistent with the
// stateless opt_set / select_bt_ct above (checked in tests).
class ApeEngine {
 public:
  ApeEngine(int arms, int dims, const EmpiricalState& state)
      : arms_(arms),
        dims_(dims),
        means_(state.means_of(all_arms(arms))),
        margins_(means_.data(), arms, dims),
        bonuses_(arms, 0.0) {}

  static std::vector<int> all_arms(int arms) {
    std::vector<int> v(arms);
    for (int i = 0; i < arms; ++i) v[i] = i;
    return v;
  }

  void refresh_arm(const EmpiricalState& state, int arm, double a) {
    state.mean(arm, means_.data() + static_cast<std::size_t>(arm) * dims_);
    margins_.update_point(means_.data(), arm);
    bonuses_[arm] = 0.4 * std::sqrt(a / static_cast<double>(state.pulls(arm)));
  }

  void set_parameter(const EmpiricalState& state, double a) {
    for (int i = 0; i < arms_; ++i)
      bonuses_[i] = 0.4 * std::sqrt(a / static_cast<double>(state.pulls(i)));
  }

  std::span<const double> bonuses() const { return bonuses_; }
  const MarginMatrix& margins() const { return margins_; }

  BtCt choose(const EmpiricalState& state) const;

 private:
  int arms_;
  int dims_;
  std::vector<double> means_;
  MarginMatrix margins_;
  std::vector<double> bonuses_;
};

BtCt choose_from_margins(const MarginMatrix& margins,
                         std::span<const double> bonuses,
                         const EmpiricalState& state);

double plug_in_hardness(const EmpiricalState& state, double floor);

}  // namespace detail

/// Confidence-bonus sampling for a fixed budget: one pull per arm, then T-K
/// adaptive pulls of the less-explored member of the target pair. Recommends
/// the empirical Pareto set over all arms at time T.
template <Sampler S>
TrialRecord ape_fb_run(S& sampler, long long budget, const ApeConfig& config,
                       std::vector<ApeStep>* trace = nullptr) {
  const int K = sampler.arms();
  const int D = sampler.dims();
  if (budget < K)
    throw insufficient_budget_error("ape_fb_run: budget below one pull per arm");
  if (config.a < 0.0)
    throw std::invalid_argument("ape_fb_run: exploration parameter must be >= 0");

  EmpiricalState state{K, D};
  std::vector<double> buf(D);
  for (int arm = 0; arm < K; ++arm) {
    sampler.sample(arm, buf.data());
    state.add(arm, buf.data());
  }

  detail::ApeEngine engine{K, D, state};
  double a = config.a;
  if (config.adapt && budget > K)
    a = tune_a(detail::plug_in_hardness(state, config.adapt_floor), budget, K);
  engine.set_parameter(state, a);

  for (long long t = K + 1; t <= budget; ++t) {
    const BtCt pick = engine.choose(state);
    if (trace)
      trace->push_back({t, pick.b, pick.c,
                        pick.pull,
                        z1_diagnostic(state, engine.bonuses()),
                        z2_diagnostic(state, engine.bonuses())});
    sampler.sample(pick.pull, buf.data());
    state.add(pick.pull, buf.data());
    if (config.adapt) {
      a = tune_a(detail::plug_in_hardness(state, config.adapt_floor), budget, K);
      engine.set_parameter(state, a);
    }
    engine.refresh_arm(state, pick.pull, a);
  }

  TrialRecord record;
  record.samples_used = budget;
  record.rounds_used = 0;  // not round-based
  std::vector<int> all = detail::ApeEngine::all_arms(K);
  record.recommended = empirical_pareto_set(state, all);
  record.accepted_trace.push_back(record.recommended);
  return record;
}

/// The online-hardness heuristic: plug-in hardness from the unified empirical
/// gaps over all arms (floored at adapt_floor), refreshed every step.
template <Sampler S>
TrialRecord ape_fb_adapt_run(S& sampler, long long budget,
                             double adapt_floor = 1e-3,
                             std::vector<ApeStep>* trace = nullptr) {
  ApeConfig config;
  config.adapt = true;
  config.adapt_floor = adapt_floor;
  return ape_fb_run(sampler, budget, config, trace);
}

}  // namespace psi
