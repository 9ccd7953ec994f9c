#include "psi/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "psi/pareto.hpp"

namespace psi {

namespace {

std::string arm_str(int i) { return std::to_string(i + 1); }  // report 1-based

// Axes minimising theta[target][d] - theta[i][d], ascending.
std::vector<int> tightest_axes(const MeanMatrix& theta, int i, int target) {
  double lo = theta(target, 0) - theta(i, 0);
  for (int d = 1; d < theta.dims(); ++d)
    lo = std::min(lo, theta(target, d) - theta(i, d));
  std::vector<int> axes;
  for (int d = 0; d < theta.dims(); ++d)
    if (theta(target, d) - theta(i, d) == lo) axes.push_back(d);
  return axes;
}

// Is `point` strictly below some other arm's mean in every dimension?
bool strictly_dominated_against(const MeanMatrix& theta, int skip,
                                const std::vector<double>& point) {
  for (int j = 0; j < theta.arms(); ++j) {
    if (j == skip) continue;
    bool strict = true;
    for (int d = 0; d < theta.dims() && strict; ++d)
      if (!(point[d] < theta(j, d))) strict = false;
    if (strict) return true;
  }
  return false;
}

}  // namespace

ClassBReport class_b_check(const MeanMatrix& theta, InstanceClass variant) {
  const int K = theta.arms();
  const GapProfile profile = complexity_profile(theta);
  std::vector<char> optimal(K, 0);
  for (int i : profile.pareto) optimal[i] = 1;

  ClassBReport rep;
  rep.variant = variant;
  rep.dominator.assign(K, -1);
  rep.partner.assign(K, -1);
  rep.escape_dim.assign(K, -1);
  auto fail = [&](std::string msg) { rep.violations.push_back(std::move(msg)); };

  // Dominator sets of the sub-optimal arms.
  std::vector<std::vector<int>> dominators(K);
  for (int i = 0; i < K; ++i) {
    if (optimal[i]) continue;
    for (int j = 0; j < K; ++j)
      if (j != i && dominated_by(theta, i, j)) dominators[i].push_back(j);
  }

  if (variant == InstanceClass::Base) {
    for (int i = 0; i < K; ++i) {
      if (optimal[i]) continue;
      if (dominators[i].size() != 1) {
        fail("sub-optimal arm " + arm_str(i) + " has " +
             std::to_string(dominators[i].size()) + " dominators, expected 1");
        continue;
      }
      rep.dominator[i] = dominators[i][0];
      rep.escape_dim[i] = tightest_axes(theta, i, rep.dominator[i]).front();
    }
    for (int j : profile.pareto) {
      std::vector<int> dominated;
      for (int i = 0; i < K; ++i)
        if (!optimal[i] && dominated_by(theta, i, j)) dominated.push_back(i);
      if (dominated.size() != 1) {
        fail("optimal arm " + arm_str(j) + " dominates " +
             std::to_string(dominated.size()) + " sub-optimal arms, expected 1");
        continue;
      }
      rep.partner[j] = dominated[0];
    }
    // Margin separation between non-comparable sub-optimal/optimal pairs.
    for (int i = 0; i < K; ++i) {
      if (optimal[i]) continue;
      for (int j : profile.pareto) {
        if (dominated_by(theta, i, j)) continue;
        const int under = rep.partner[j];
        if (under < 0) continue;  // already reported above
        const double required =
            3.0 * std::max(profile.delta[i], profile.delta[under]);
        const double margin = margin_max(theta, i, j);
        rep.margin_checks.push_back({i, j, margin, required});
        if (!(margin >= required))
          fail("margin of sub-optimal arm " + arm_str(i) + " vs optimal arm " +
               arm_str(j) + " is " + std::to_string(margin) + " < " +
               std::to_string(required));
      }
    }
  } else {
    // Extended family.
    // (1) Every sub-optimal arm, pushed up its tightest axis by its gap,
    //     escapes strict domination by the other arms.
    for (int i = 0; i < K; ++i) {
      if (optimal[i]) continue;
      // maximal dominator: arm attaining the displacement, lowest index
      int star = -1;
      double best = -1.0;
      for (int j = 0; j < K; ++j) {
        if (j == i) continue;
        const double m = margin_min(theta, i, j);
        if (m > best) {
          best = m;
          star = j;
        }
      }
      rep.dominator[i] = star;
      bool escaped = false;
      for (int d : tightest_axes(theta, i, star)) {
        std::vector<double> shifted(theta.row(i).begin(), theta.row(i).end());
        shifted[d] += profile.delta[i];
        if (!strictly_dominated_against(theta, i, shifted)) {
          rep.escape_dim[i] = d;
          escaped = true;
          break;
        }
      }
      if (!escaped)
        fail("sub-optimal arm " + arm_str(i) +
             " cannot escape along any tightest axis");
    }
    // (2) Every optimal arm i needs a unique partner: the only arm maximally
    //     dominated by i alone, itself dominated only by i.
    for (int i : profile.pareto) {
      std::vector<int> pi;
      for (int j = 0; j < K; ++j) {
        if (optimal[j] || j == i) continue;
        // Omega*(j) == {i}?
        const double disp = profile.delta_star[j];
        bool only_i = true, attains_i = false;
        for (int l = 0; l < K && only_i; ++l) {
          if (l == j) continue;
          if (margin_min(theta, j, l) == disp) {
            if (l == i)
              attains_i = true;
            else
              only_i = false;
          }
        }
        if (only_i && attains_i) pi.push_back(j);
      }
      if (pi.size() != 1) {
        fail("optimal arm " + arm_str(i) + " has " + std::to_string(pi.size()) +
             " uniquely-maximally-dominated arms, expected 1");
        continue;
      }
      if (dominators[pi[0]] != std::vector<int>{i}) {
        fail("partner of optimal arm " + arm_str(i) + " (arm " +
             arm_str(pi[0]) + ") must be dominated by it alone");
        continue;
      }
      rep.partner[i] = pi[0];
    }
    // (3) Optimal pairs vs their partners' gaps.
    for (int i : profile.pareto) {
      for (int j : profile.pareto) {
        if (i == j) continue;
        if (rep.partner[i] < 0 || rep.partner[j] < 0) continue;
        const double required =
            3.0 * std::max(profile.delta[rep.partner[i]],
                           profile.delta[rep.partner[j]]);
        const double margin = margin_max(theta, i, j);
        rep.margin_checks.push_back({i, j, margin, required});
        if (!(margin >= required))
          fail("margin between optimal arms " + arm_str(i) + " and " +
               arm_str(j) + " is " + std::to_string(margin) + " < " +
               std::to_string(required));
      }
    }
    // (4) All non-dominated ordered pairs.
    for (int i = 0; i < K; ++i) {
      for (int j = 0; j < K; ++j) {
        if (i == j || dominated_by(theta, i, j)) continue;
        const double required =
            3.0 * std::max(profile.delta[i], profile.delta[j]);
        const double margin = margin_max(theta, i, j);
        rep.margin_checks.push_back({i, j, margin, required});
        if (!(margin >= required))
          fail("margin of arm " + arm_str(i) + " vs arm " + arm_str(j) +
               " is " + std::to_string(margin) + " < " +
               std::to_string(required));
      }
    }
  }

  rep.member = rep.violations.empty();
  return rep;
}

MeanMatrix alternative_instance(const MeanMatrix& theta, int i,
                                InstanceClass variant) {
  check_arm(theta, i);
  const ClassBReport rep = class_b_check(theta, variant);
  if (!rep.member)
    throw std::invalid_argument(
        "alternative_instance: instance is not a class member (" +
        rep.violations.front() + ")");
  const GapProfile profile = complexity_profile(theta);
  std::vector<char> optimal(theta.arms(), 0);
  for (int a : profile.pareto) optimal[a] = 1;

  std::vector<double> row(theta.row(i).begin(), theta.row(i).end());
  if (optimal[i]) {
    const int under = rep.partner[i];
    const int axis = variant == InstanceClass::Base
                         ? tightest_axes(theta, under, i).front()
                         : rep.escape_dim[under];
    row[axis] -= 2.0 * profile.delta[i];
  } else {
    row[rep.escape_dim[i]] += 2.0 * profile.delta[i];
  }
  return theta.with_row(i, row);
}

GapPreservationReport verify_gap_preservation(const MeanMatrix& theta, int i,
                                              InstanceClass variant) {
  const MeanMatrix alt =
      i < 0 ? theta : alternative_instance(theta, i, variant);
  const GapProfile before = complexity_profile(theta);
  const GapProfile after = complexity_profile(alt);

  GapPreservationReport rep;
  rep.pareto_changed = before.pareto != after.pareto;
  for (int a = 0; a < theta.arms(); ++a) {
    const double x = before.delta[a], y = after.delta[a];
    const double scale = std::max(std::abs(x), std::abs(y));
    rep.max_gap_deviation =
        std::max(rep.max_gap_deviation, scale > 0 ? std::abs(x - y) / scale : 0.0);
  }
  rep.h_original = before.h1;
  rep.h_alternative = after.h1;
  return rep;
}

double lb_value(long long T, double h1, double sigma) {
  if (T < 0) throw std::invalid_argument("lb_value: T must be >= 0");
  if (!(h1 > 0.0)) throw std::invalid_argument("lb_value: h1 must be > 0");
  if (!(sigma > 0.0)) throw std::invalid_argument("lb_value: sigma must be > 0");
  return 0.25 * std::exp(-2.0 * static_cast<double>(T) / (sigma * sigma * h1));
}

}  // namespace psi
