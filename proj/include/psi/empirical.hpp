#pragma once

#include <span>
#include <vector>

namespace psi {

/// Per-arm pull counts and running means. Samples are never discarded; the
/// mean is always the exact arithmetic mean of everything delivered so far.
class EmpiricalState {
 public:
  EmpiricalState(int arms, int dims);

  int arms() const { return arms_; }
  int dims() const { return dims_; }

  void add(int arm, const double* sample);
  long long pulls(int arm) const { return counts_[arm]; }

  /// Mean vector of one arm; the arm must have been pulled.
  void mean(int arm, double* out) const;

  /// Row-major block of the means of the given arms, in order.
  std::vector<double> means_of(std::span<const int> arms) const;

 private:
  int arms_;
  int dims_;
  std::vector<double> sums_;
  std::vector<long long> counts_;
};

/// Arms of `active` whose empirical mean clears every other active arm by a
/// strictly positive margin in some dimension. Exact empirical ties exclude
/// an arm. Every active arm must have at least one pull.
std::vector<int> empirical_pareto_set(const EmpiricalState& state,
                                      std::span<const int> active);

/// Empirical gaps of the active arms (aligned with `active`), computed from
/// the empirical means alone. Requires at least two active arms, each pulled.
std::vector<double> empirical_gaps(const EmpiricalState& state,
                                   std::span<const int> active);

struct SurvivorSplit {
  std::vector<int> survivors;  // positions into the gap array, ascending
  std::vector<int> removed;
};

/// Keep the `keep` smallest-gap positions. Ties crossing the cutoff retain
/// front members first, then the lowest position.
SurvivorSplit select_survivors(std::span<const double> gaps,
                               std::span<const char> in_front, int keep);

}  // namespace psi
