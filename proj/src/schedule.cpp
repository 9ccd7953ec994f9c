#include "psi/schedule.hpp"

#include <cmath>
#include <stdexcept>

#include "psi/errors.hpp"

namespace psi {

namespace {

// Guard band for floor/ceil on grid formulas whose mathematical value can be
// an exact integer (e.g. power-of-two K in the geometric grid): without it a
// one-ulp rounding error in pow/log flips the grid point.
constexpr double kGridSnap = 1e-9;

long long floor_snapped(double x) {
  return static_cast<long long>(std::floor(x + kGridSnap));
}

long long ceil_snapped(double x) {
  return static_cast<long long>(std::ceil(x - kGridSnap));
}

}  // namespace

long long nominal_cost(const Schedule& s) {
  long long total = 0;
  for (int r = 0; r < s.rounds(); ++r) total += s.active[r] * s.pulls[r];
  return total;
}

std::string ScheduleReport::joined() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v;
  }
  return out;
}

ScheduleReport validate_schedule(const Schedule& s, int K, long long T) {
  ScheduleReport rep;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.violations.push_back(std::move(msg));
  };

  if (s.active.empty() || s.pulls.empty() ||
      s.active.size() != s.pulls.size() + 1) {
    fail("shape: active must have length rounds+1 and pulls length rounds>=1");
    return rep;
  }
  const int R = s.rounds();
  if (s.active[0] != K)
    fail("active[0] = " + std::to_string(s.active[0]) + " must equal K = " +
         std::to_string(K));
  if (s.active[R] != 0 && s.active[R] != 1)
    fail("active[R] = " + std::to_string(s.active[R]) + " must be 0 or 1");
  for (int r = 0; r < R; ++r)
    if (!(s.active[r] > s.active[r + 1]))
      fail("active counts must strictly decrease: fails at r=" +
           std::to_string(r + 1));
  for (int r = 0; r < R; ++r)
    if (s.pulls[r] < 0)
      fail("pulls[" + std::to_string(r) + "] is negative");
  if (!s.pulls.empty() && s.pulls[0] < 1)
    fail("pulls[0] must be >= 1 so every arm gets sampled before scoring");
  if (rep.ok && nominal_cost(s) > T)
    fail("cost " + std::to_string(nominal_cost(s)) + " exceeds budget " +
         std::to_string(T));
  return rep;
}

double half_log_sum(int K) {
  double acc = 0.5;
  for (int i = 2; i <= K; ++i) acc += 1.0 / i;
  return acc;
}

Schedule schedule_sr(int K, long long T) {
  if (K < 2) throw std::invalid_argument("schedule_sr: need K >= 2");
  if (T < K)
    throw insufficient_budget_error("schedule_sr: budget below one pull per arm");
  const double norm = half_log_sum(K);
  Schedule s;
  s.active.resize(K);
  s.pulls.resize(K - 1);
  long long prev = 0;
  for (int r = 1; r <= K - 1; ++r) {
    s.active[r - 1] = K + 1 - r;
    const long long n_r =
        ceil_snapped(static_cast<double>(T - K) / (norm * (K + 1 - r)));
    s.pulls[r - 1] = n_r - prev;
    prev = n_r;
  }
  s.active[K - 1] = 1;
  if (s.pulls[0] < 1)
    throw insufficient_budget_error(
        "schedule_sr: budget too small for a first pull per arm");
  return s;
}

Schedule schedule_sh(int K, long long T) {
  if (K < 2) throw std::invalid_argument("schedule_sh: need K >= 2");
  if (T < K)
    throw insufficient_budget_error("schedule_sh: budget below one pull per arm");
  const int R = static_cast<int>(std::ceil(std::log2(static_cast<double>(K))));
  Schedule s;
  s.active.push_back(K);
  for (int r = 0; r < R; ++r) {
    const int next = (s.active.back() + 1) / 2;
    const long long t = T / (static_cast<long long>(s.active.back()) * R);
    if (t < 1)
      throw insufficient_budget_error(
          "schedule_sh: round " + std::to_string(r + 1) + " gets zero pulls");
    s.pulls.push_back(t);
    s.active.push_back(next);
  }
  return s;
}

Schedule schedule_gg(int K, long long T, int R) {
  if (K < 2) throw std::invalid_argument("schedule_gg: need K >= 2");
  if (R < 1) throw std::invalid_argument("schedule_gg: need R >= 1");
  if (T < 2LL * R * K)
    throw insufficient_budget_error("schedule_gg: requires T >= 2*R*K");

  const double log2K = std::log2(static_cast<double>(K));
  Schedule s;
  s.active.resize(R + 1);
  s.pulls.resize(R);
  long long prev = 0;
  for (int r = 1; r <= R; ++r) {
    // alpha_r = floor((T/R) * K^{(r-R-1)/R})
    const double expo = (static_cast<double>(r - R - 1) / R) * log2K;
    const long long alpha =
        floor_snapped(static_cast<double>(T) / R * std::exp2(expo));
    s.pulls[r - 1] = alpha - prev;
    prev = alpha;
    // lambda_r = floor(K / K^{(r-1)/R})
    const double le = (static_cast<double>(r - 1) / R) * log2K;
    s.active[r - 1] = static_cast<int>(floor_snapped(K / std::exp2(le)));
  }
  s.active[R] = 1;

  const auto rep = validate_schedule(s, K, T);
  if (!rep.ok)
    throw std::invalid_argument(
        "schedule_gg: K=" + std::to_string(K) + ", R=" + std::to_string(R) +
        " does not yield a usable schedule (" + rep.joined() + ")");
  return s;
}

Schedule schedule_uniform(int K, long long T) {
  if (K < 2) throw std::invalid_argument("schedule_uniform: need K >= 2");
  if (T < K)
    throw insufficient_budget_error(
        "schedule_uniform: budget below one pull per arm");
  Schedule s;
  s.active = {K, 0};
  s.pulls = {T / K};
  return s;
}

std::vector<long long> cumulative_pulls(const Schedule& s) {
  std::vector<long long> n(s.rounds());
  long long acc = 0;
  for (int r = 0; r < s.rounds(); ++r) {
    acc += s.pulls[r];
    n[r] = acc;
  }
  return n;
}

}  // namespace psi
