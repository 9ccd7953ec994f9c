#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "psi/lowerbound.hpp"
#include "psi/pareto.hpp"

using namespace psi;

namespace {

// Four-arm staircase: two optimal arms, each dominating exactly one arm,
// with wide margins everywhere else. All four gaps equal 1/2.
MeanMatrix staircase() {
  return {4, 2, {-2.5, 3.0, -3.0, 1.0, 2.0, -0.5, 1.5, -3.0}};
}

MeanMatrix i3() { return {3, 2, {1.0, 0.2, 0.2, 1.0, 0.5, 0.1}}; }

}  // namespace

TEST_CASE("staircase instance belongs to the base family") {
  const ClassBReport rep = class_b_check(staircase());
  REQUIRE(rep.member);
  CHECK(rep.dominator == std::vector<int>{-1, 0, -1, 2});
  CHECK(rep.partner == std::vector<int>{1, -1, 3, -1});
  CHECK(!rep.margin_checks.empty());
  for (const auto& check : rep.margin_checks)
    CHECK(check.margin >= check.required);
}

TEST_CASE("three-arm instance is rejected with a named condition") {
  const ClassBReport rep = class_b_check(i3());
  CHECK(!rep.member);
  REQUIRE(!rep.violations.empty());
  // optimal arm 2 dominates no sub-optimal arm
  CHECK(rep.violations.front().find("optimal arm 2") != std::string::npos);
}

TEST_CASE("shared dominators break membership") {
  // the bottom arm sits under both optimal arms
  const MeanMatrix t{4, 2, {0.0, 4.0, 4.0, 0.0, -1.0, 3.0, -0.5, -0.5}};
  const ClassBReport rep = class_b_check(t);
  CHECK(!rep.member);
}

TEST_CASE("alternative instances shift one coordinate by twice the gap") {
  const MeanMatrix base = staircase();
  const GapProfile profile = complexity_profile(base);
  for (int i = 0; i < 4; ++i) {
    const MeanMatrix alt = alternative_instance(base, i);
    int changed_coords = 0;
    double delta = 0.0;
    for (int a = 0; a < 4; ++a) {
      for (int d = 0; d < 2; ++d) {
        if (base(a, d) != alt(a, d)) {
          ++changed_coords;
          CHECK(a == i);  // rows other than i are untouched bit-for-bit
          delta = alt(a, d) - base(a, d);
        }
      }
    }
    CHECK(changed_coords == 1);
    CHECK(std::abs(delta) ==
          doctest::Approx(2.0 * profile.delta[i]).epsilon(1e-15));
    CHECK(pareto_set(alt) != pareto_set(base));
  }
}

TEST_CASE("sub-optimal arms become optimal in their alternative") {
  const MeanMatrix base = staircase();
  // arm 1 (0-based) is dominated by arm 0 only
  const MeanMatrix alt = alternative_instance(base, 1);
  const auto front = pareto_set(alt);
  CHECK(std::find(front.begin(), front.end(), 1) != front.end());
}

TEST_CASE("optimal arms release their partner in the alternative") {
  const MeanMatrix base = staircase();
  // arm 0 is optimal with partner 1
  const MeanMatrix alt = alternative_instance(base, 0);
  const auto front = pareto_set(alt);
  CHECK(std::find(front.begin(), front.end(), 1) != front.end());
}

TEST_CASE("non-members cannot be perturbed") {
  CHECK_THROWS_AS(alternative_instance(i3(), 0), std::invalid_argument);
}

TEST_CASE("gaps survive every single-arm perturbation") {
  const MeanMatrix base = staircase();
  for (int i = -1; i < 4; ++i) {
    const GapPreservationReport rep = verify_gap_preservation(base, i);
    CHECK(rep.max_gap_deviation <= 1e-10);
    CHECK(rep.h_alternative ==
          doctest::Approx(rep.h_original).epsilon(1e-10));
    CHECK(rep.pareto_changed == (i >= 0));
  }
}

TEST_CASE("staircase also satisfies the extended conditions") {
  const ClassBReport rep = class_b_check(staircase(), InstanceClass::Extended);
  REQUIRE(rep.member);
  for (int i = 0; i < 4; ++i) {
    const GapPreservationReport g =
        verify_gap_preservation(staircase(), i, InstanceClass::Extended);
    CHECK(g.pareto_changed);
    // the extended family only promises the complexity never grows
    CHECK(g.h_alternative <= g.h_original * (1 + 1e-10));
  }
}

TEST_CASE("extended membership fails when margins shrink") {
  // squeeze the two optimal arms together: margin conditions collapse
  const MeanMatrix t{4, 2, {-2.5, 3.0, -3.0, 1.0, -2.4, 2.9, 1.5, -3.0}};
  const ClassBReport rep = class_b_check(t, InstanceClass::Extended);
  CHECK(!rep.member);
}

TEST_CASE("error floor arithmetic") {
  CHECK(lb_value(0, 16.0, 1.0) == 0.25);
  CHECK(lb_value(100, 100.0, 1.0) ==
        doctest::Approx(0.25 * std::exp(-2.0)).epsilon(1e-15));
  CHECK(lb_value(200, 100.0, 1.0) < lb_value(100, 100.0, 1.0));
  CHECK_THROWS_AS(lb_value(10, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(lb_value(10, 1.0, 0.0), std::invalid_argument);
}
