#pragma once

#include <span>
#include <vector>

#include "psi/matrix.hpp"

namespace psi {

/// Lebesgue measure of the union of boxes [ref, p] over the given points.
/// Every point must weakly dominate ref (p[d] >= ref[d] for all d), otherwise
/// std::invalid_argument. Exact: sweep for D = 2, dimension-sweep recursion
/// with dominance filtering for D >= 3 (intended for up to a few hundred
/// points at moderate D).
double hypervolume(std::span<const std::vector<double>> points,
                   std::span<const double> ref);

/// Ratio HV(means of `recommended`) / HV(means of the true Pareto set).
/// Empty recommendation scores 0 by convention.
double hv_fraction(std::span<const int> recommended, const MeanMatrix& theta,
                   std::span<const double> ref);

}  // namespace psi
