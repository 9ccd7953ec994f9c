#pragma once

#include <string>
#include <vector>

namespace psi {

/// Round-based elimination plan: `active[r]` arms stay active in round r+1
/// (active[0] = K, active[R] in {0, 1}) and each active arm receives
/// `pulls[r]` fresh samples in round r+1.
struct Schedule {
  std::vector<int> active;        // length R+1
  std::vector<long long> pulls;   // length R

  int rounds() const { return static_cast<int>(pulls.size()); }
};

/// Total sampling cost: sum over rounds of active[r] * pulls[r].
long long nominal_cost(const Schedule& s);

struct ScheduleReport {
  bool ok = true;
  std::vector<std::string> violations;

  std::string joined() const;
};

/// Checks the structural constraints of a schedule for K arms and budget T:
/// sizes consistent, active[0] = K, trailing count in {0,1}, strictly
/// decreasing counts, non-negative pulls with pulls[0] >= 1, cost <= T.
ScheduleReport validate_schedule(const Schedule& s, int K, long long T);

/// One arm de-activated per round; allocation follows the classic
/// ceil((T-K) / (halfsum * (K+1-r))) cumulative grid.
Schedule schedule_sr(int K, long long T);

/// Halve the active set each round, spreading the budget uniformly:
/// pulls[r] = floor(T / (active[r] * R)) with R = ceil(log2 K).
Schedule schedule_sh(int K, long long T);

/// Geometric grid with R rounds: cumulative pulls alpha_r =
/// floor((T/R) * K^{r/R} / K^{1+1/R}), arm counts floor(K / K^{(r-1)/R}).
/// Requires T >= 2*R*K. Some (K, R) pairs floor to non-strictly-decreasing
/// arm counts; those are rejected with the validation report.
Schedule schedule_gg(int K, long long T, int R);

/// Single round, floor(T/K) pulls per arm, everything classified at once.
Schedule schedule_uniform(int K, long long T);

/// Cumulative per-arm sample counts n_r = sum_{s<=r} pulls[s].
std::vector<long long> cumulative_pulls(const Schedule& s);

/// SR allocation normaliser: 1/2 + sum_{i=2..K} 1/i.
double half_log_sum(int K);

}  // namespace psi
