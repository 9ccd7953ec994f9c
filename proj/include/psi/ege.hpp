#pragma once

#include <algorithm>
#include <concepts>
#include <span>
#include <stdexcept>
#include <vector>

#include "psi/empirical.hpp"
#include "psi/margins.hpp"
#include "psi/matrix.hpp"
#include "psi/schedule.hpp"

namespace psi {

/// Anything that can produce one fresh D-dimensional observation per arm.
/// A run owns its sampler; independent runs need independent streams.
template <typename S>
concept Sampler = requires(S s, int arm, double* out) {
  { s.arms() } -> std::convertible_to<int>;
  { s.dims() } -> std::convertible_to<int>;
  s.sample(arm, out);
};

/// Outcome of one algorithm run.
struct TrialRecord {
  std::vector<int> recommended;                  // ascending arm ids
  int rounds_used = 0;                           // stopping round
  long long samples_used = 0;                    // total pulls issued
  std::vector<std::vector<int>> accepted_trace;  // per-round additions
  std::vector<std::vector<int>> rejected_trace;
};

/// 0/1 loss of the at-most-k relaxation: a size-k recommendation succeeds iff
/// it is a subset of the optimal set, any other size succeeds iff it is the
/// optimal set exactly.
int psi_k_loss(std::span<const int> recommended, std::span<const int> optimal,
               int k);
int psi_k_loss(std::span<const int> recommended, const MeanMatrix& truth, int k);

namespace detail {

template <Sampler S>
void pull_round(S& sampler, EmpiricalState& state, std::span<const int> active,
                long long pulls, std::vector<double>& buf,
                long long& samples_used) {
  for (int arm : active) {
    for (long long s = 0; s < pulls; ++s) {
      sampler.sample(arm, buf.data());
      state.add(arm, buf.data());
    }
  }
  samples_used += pulls * static_cast<long long>(active.size());
}

}  // namespace detail

/// Round-based elimination: each round pulls every active arm, scores the
/// active arms by their empirical gaps, de-activates the largest-gap arms and
/// classifies them by empirical front membership. The recommendation is the
/// accepted set plus whatever stayed active.
template <Sampler S>
TrialRecord ege_run(S& sampler, const Schedule& schedule, long long budget) {
  const int K = sampler.arms();
  const int D = sampler.dims();
  const auto report = validate_schedule(schedule, K, budget);
  if (!report.ok)
    throw std::invalid_argument("ege_run: invalid schedule: " + report.joined());

  const int R = schedule.rounds();
  EmpiricalState state{K, D};
  std::vector<int> active(K);
  for (int i = 0; i < K; ++i) active[i] = i;

  TrialRecord record;
  record.accepted_trace.resize(R);
  record.rejected_trace.resize(R);
  std::vector<int> accepted;
  std::vector<double> buf(D);

  for (int r = 0; r < R; ++r) {
    detail::pull_round(sampler, state, active, schedule.pulls[r], buf,
                       record.samples_used);
    const int keep = schedule.active[r + 1];
    const std::vector<double> rows = state.means_of(active);
    const int n = static_cast<int>(active.size());

    std::vector<int> next;
    if (keep == 0) {
      // No selection left: classify everything by front membership.
      const std::vector<int> front = strict_front(rows.data(), n, D);
      std::vector<char> mask(n, 0);
      for (int pos : front) mask[pos] = 1;
      for (int pos = 0; pos < n; ++pos)
        (mask[pos] ? record.accepted_trace[r] : record.rejected_trace[r])
            .push_back(active[pos]);
    } else {
      const SetGaps gaps = unified_set_gaps(rows.data(), n, D);
      const SurvivorSplit split =
          select_survivors(gaps.gap, gaps.front, keep);
      for (int pos : split.removed)
        (gaps.front[pos] ? record.accepted_trace[r] : record.rejected_trace[r])
            .push_back(active[pos]);
      next.reserve(keep);
      for (int pos : split.survivors) next.push_back(active[pos]);
    }
    for (int arm : record.accepted_trace[r]) accepted.push_back(arm);
    active = std::move(next);
  }

  record.rounds_used = R;
  record.recommended = std::move(accepted);
  for (int arm : active) record.recommended.push_back(arm);
  std::sort(record.recommended.begin(), record.recommended.end());
  return record;
}

/// Early-stopping variant on the one-arm-per-round allocation: accepts or
/// rejects exactly one arm per round and stops as soon as k arms have been
/// accepted, returning just those k.
template <Sampler S>
TrialRecord ege_sr_k_run(S& sampler, long long budget, int k) {
  if (k < 1) throw std::invalid_argument("ege_sr_k_run: k must be >= 1");
  const int K = sampler.arms();
  const int D = sampler.dims();
  const Schedule schedule = schedule_sr(K, budget);

  EmpiricalState state{K, D};
  std::vector<int> active(K);
  for (int i = 0; i < K; ++i) active[i] = i;

  TrialRecord record;
  record.accepted_trace.resize(schedule.rounds());
  record.rejected_trace.resize(schedule.rounds());
  std::vector<int> accepted;
  std::vector<double> buf(D);

  for (int r = 0; r < schedule.rounds(); ++r) {
    detail::pull_round(sampler, state, active, schedule.pulls[r], buf,
                       record.samples_used);
    const std::vector<double> rows = state.means_of(active);
    const int n = static_cast<int>(active.size());
    const SetGaps gaps = unified_set_gaps(rows.data(), n, D);

    // argmax gap; ties remove an off-front arm first, then the lowest index.
    int out = 0;
    for (int pos = 1; pos < n; ++pos) {
      if (gaps.gap[pos] > gaps.gap[out] ||
          (gaps.gap[pos] == gaps.gap[out] && gaps.front[pos] < gaps.front[out]))
        out = pos;
    }

    record.rounds_used = r + 1;
    if (gaps.front[out]) {
      record.accepted_trace[r].push_back(active[out]);
      accepted.push_back(active[out]);
      if (static_cast<int>(accepted.size()) == k) {
        record.recommended = std::move(accepted);
        std::sort(record.recommended.begin(), record.recommended.end());
        return record;
      }
    } else {
      record.rejected_trace[r].push_back(active[out]);
    }
    active.erase(active.begin() + out);
  }

  record.recommended = std::move(accepted);
  for (int arm : active) record.recommended.push_back(arm);
  std::sort(record.recommended.begin(), record.recommended.end());
  return record;
}

}  // namespace psi
