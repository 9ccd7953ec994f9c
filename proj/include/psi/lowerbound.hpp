#pragma once

#include <string>
#include <vector>

#include "psi/matrix.hpp"

namespace psi {

enum class InstanceClass { Base, Extended };  // two nested instance families

struct MarginCheck {
  int sub_arm;      // sub-optimal arm i
  int opt_arm;      // optimal arm j it does not precede
  double margin;    // margin_max(i, j)
  double required;  // 3 * max(gap_i, gap of j's dominated partner)
};

struct ClassBReport {
  bool member = false;
  InstanceClass variant = InstanceClass::Base;
  std::vector<int> dominator;   // per arm: unique dominating arm, -1 for optimal
  std::vector<int> partner;     // per arm: unique dominated partner, -1 for sub-optimal
  std::vector<int> escape_dim;  // per sub-optimal arm: shift axis, -1 otherwise
  std::vector<MarginCheck> margin_checks;
  std::vector<std::string> violations;
};

/// Structural membership test for the lower-bound instance family.
/// Base conditions: every sub-optimal arm has exactly one dominator, every
/// optimal arm has exactly one uniquely-dominated partner, and margins
/// between non-comparable sub-optimal/optimal pairs are at least three times
/// the larger of the two relevant gaps. The extended family replaces the
/// unique-dominator condition with an escape direction for each sub-optimal
/// arm and widens the margin conditions to all non-comparable pairs.
ClassBReport class_b_check(const MeanMatrix& theta,
                           InstanceClass variant = InstanceClass::Base);

/// The perturbed instance in which only arm i's mean moves by twice its gap
/// along one canonical axis: up the tightest axis toward its dominator for a
/// sub-optimal arm, down the partner's tightest axis for an optimal arm.
/// Flips the Pareto set while preserving every gap on the base family.
MeanMatrix alternative_instance(const MeanMatrix& theta, int i,
                                InstanceClass variant = InstanceClass::Base);

struct GapPreservationReport {
  bool pareto_changed = false;
  double max_gap_deviation = 0.0;  // max relative per-arm gap change
  double h_original = 0.0;
  double h_alternative = 0.0;
};

/// Compares the gap profiles of theta and alternative_instance(theta, i).
/// i = -1 is the identity sentinel (compares the instance with itself).
GapPreservationReport verify_gap_preservation(
    const MeanMatrix& theta, int i,
    InstanceClass variant = InstanceClass::Base);

/// Worst-case error floor (1/4) exp(-2 T / (sigma^2 h1)).
double lb_value(long long T, double h1, double sigma);

}  // namespace psi
