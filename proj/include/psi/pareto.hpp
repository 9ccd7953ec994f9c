#pragma once

#include <vector>

#include "psi/matrix.hpp"

namespace psi {

/// Smallest uniform increase of arm j's mean that makes it dominate arm i:
/// max_d (theta[i][d] - theta[j][d]).
double margin_max(const MeanMatrix& theta, int i, int j);

/// Smallest increase of any component of arm i that frees it from arm j:
/// min_d (theta[j][d] - theta[i][d]). Exactly -margin_max(theta, i, j).
double margin_min(const MeanMatrix& theta, int i, int j);

/// True iff arm i is Pareto-dominated by arm j (componentwise <= with at
/// least one strict coordinate).
bool dominated_by(const MeanMatrix& theta, int i, int j);

/// Arms dominated by no other arm. Duplicated rows are tolerated: undominated
/// copies are all optimal.
std::vector<int> pareto_set(const MeanMatrix& theta);

/// Gap of a sub-optimal arm: max over optimal j of margin_min(i, j).
/// Throws std::invalid_argument when i is optimal.
double gap_suboptimal(const MeanMatrix& theta, int i);

/// Gap of an optimal arm: min of the closest-other-optimal margin and the
/// smallest (margin_max(j,i))^+ + gap_j over sub-optimal arms j, with the
/// empty-set convention +infinity. Throws when i is sub-optimal.
double gap_optimal(const MeanMatrix& theta, int i);

/// Gap of any arm through the self-contained rewriting that avoids explicit
/// reference to the Pareto set. Agrees with the branch definitions above; the
/// two routes are kept as independent code paths and cross-checked in tests.
double gap_unified(const MeanMatrix& theta, int i);

struct GapProfile {
  std::vector<int> pareto;         // optimal arms, ascending
  std::vector<double> delta;       // per-arm gap, > 0 (possibly +inf)
  std::vector<double> delta_star;  // signed displacement max_j margin_min(i,j)
  double h1 = 0.0;                 // sum of inverse squared gaps
  double h2 = 0.0;                 // max over ranks of rank / gap^2
};

/// Full gap/complexity profile via the branch definitions.
/// Throws degenerate_instance_error when some gap is exactly zero.
GapProfile complexity_profile(const MeanMatrix& theta);

struct RelaxedGapProfile {
  int k = 0;
  double omega_k = 0.0;          // k-th largest optimal gap, 0 when |S*| < k
  std::vector<double> delta_k;   // relaxed per-arm gaps
  double h2_k = 0.0;
};

/// k-relaxed profile: optimal gaps floored at the k-th largest optimal gap.
RelaxedGapProfile relaxed_profile(const MeanMatrix& theta, int k);

}  // namespace psi
