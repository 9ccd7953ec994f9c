#include "psi/envs.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "psi/errors.hpp"
#include "psi/pareto.hpp"

namespace psi {

namespace {

void check_sigma(const std::vector<double>& sigma, int dims) {
  if (sigma.size() != static_cast<std::size_t>(dims))
    throw std::invalid_argument("BanditInstance: sigma length must equal D");
  for (double s : sigma)
    if (!(s >= 0.0) || !std::isfinite(s))
      throw std::invalid_argument("BanditInstance: sigma must be finite and >= 0");
}

}  // namespace

BanditInstance::BanditInstance(MeanMatrix m, std::vector<double> s)
    : means(std::move(m)), sigma(std::move(s)) {
  check_sigma(sigma, means.dims());
}

BanditInstance::BanditInstance(MeanMatrix m, double s)
    : means(std::move(m)), sigma(means.dims(), s) {
  check_sigma(sigma, means.dims());
}

SeededSampler::SeededSampler(const BanditInstance& instance,
                             std::uint64_t master_seed, std::uint64_t stream)
    : instance_(&instance) {
  engines_.reserve(arms());
  for (int arm = 0; arm < arms(); ++arm)
    engines_.emplace_back(derive_seed(master_seed, stream, arm));
  noise_free_ = true;
  for (double s : instance.sigma)
    if (s != 0.0) noise_free_ = false;
}

void SeededSampler::sample(int arm, double* out) {
  const int D = dims();
  const auto row = instance_->means.row(arm);
  if (noise_free_) {
    for (int d = 0; d < D; ++d) out[d] = row[d];
    return;
  }
  Xoshiro256pp& eng = engines_[arm];
  // One Gaussian pair per two dimensions; an odd trailing dimension uses the
  // first value of a fresh pair so samples never share state across calls.
  for (int d = 0; d < D; d += 2) {
    double z0, z1;
    eng.gaussian_pair(z0, z1);
    out[d] = row[d] + instance_->sigma[d] * z0;
    if (d + 1 < D) out[d + 1] = row[d + 1] + instance_->sigma[d + 1] * z1;
  }
}

namespace {

MeanMatrix from_rows(const std::vector<std::vector<double>>& rows) {
  const int K = static_cast<int>(rows.size());
  const int D = static_cast<int>(rows[0].size());
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(K) * D);
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return {K, D, std::move(flat)};
}

// Experiment 1: ten arms on the convex front x -> (x^2, 1/(4x^2)) plus fifty
// draws from the dominated region {(x, y) in [0.1, 0.8]^2 : x y <= 1/5}.
MeanMatrix gen_convex_front(Xoshiro256pp& rng) {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 10; ++i) {
    const double x = 0.55 + i * (0.95 - 0.55) / 9.0;
    rows.push_back({x * x, 1.0 / (4.0 * x * x)});
  }
  while (rows.size() < 60) {
    const double x = 0.1 + 0.7 * rng.uniform();
    const double y = 0.1 + 0.7 * rng.uniform();
    if (x * y <= 0.2) rows.push_back({x, y});
  }
  return from_rows(rows);
}

// Experiment 2: two optimal arms; every sub-optimal arm is dominated by
// exactly one of them.
MeanMatrix gen_unique_dominators() {
  std::vector<std::vector<double>> rows{{0.4, 0.75}, {0.75, 0.4}};
  for (int i = 1; i <= 4; ++i) {
    const double p = std::pow(0.2, i);
    rows.push_back({0.45 + p, 0.35 - p});
    rows.push_back({0.10 + p, 0.70 - p});
  }
  return from_rows(rows);
}

// Experiment 3: 200 arms on the unit circle, 20 on the first-quadrant arc.
MeanMatrix gen_circle() {
  std::vector<std::vector<double>> rows;
  const double pi = std::numbers::pi;
  for (int i = 0; i < 20; ++i) {
    const double b = pi / 12 + i * (pi / 2 - pi / 6) / 19.0;
    rows.push_back({std::cos(b), std::sin(b)});
  }
  const double lo = pi / 2 + pi / 6, hi = 2 * pi - pi / 6;
  for (int i = 0; i < 180; ++i) {
    const double b = lo + i * (hi - lo) / 179.0;
    rows.push_back({std::cos(b), std::sin(b)});
  }
  return from_rows(rows);
}

// Experiment 4: D = 10, a dominated block of 30 under a block of 20.
MeanMatrix gen_high_dim(Xoshiro256pp& rng) {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 30; ++i) {
    std::vector<double> r(10);
    for (auto& v : r) v = 0.2 + 0.25 * rng.uniform();
    rows.push_back(std::move(r));
  }
  for (int i = 0; i < 20; ++i) {
    std::vector<double> r(10);
    for (auto& v : r) v = 0.55 + 0.20 * rng.uniform();
    rows.push_back(std::move(r));
  }
  return from_rows(rows);
}

// Experiment 5: two clusters, redrawn until exactly 4 arms are optimal.
MeanMatrix gen_two_clusters(Xoshiro256pp& rng) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 10; ++i)
      rows.push_back({0.2 + 0.2 * rng.uniform(), 0.2 + 0.2 * rng.uniform()});
    for (int i = 0; i < 10; ++i)
      rows.push_back({0.5 + 0.2 * rng.uniform(), 0.5 + 0.2 * rng.uniform()});
    MeanMatrix theta = from_rows(rows);
    if (pareto_set(theta).size() == 4) return theta;
  }
  throw std::runtime_error("gen_experiment(5): no 4-optimal draw found");
}

// Experiment 6: all arms optimal along a geometric trade-off curve.
MeanMatrix gen_all_optimal() {
  std::vector<std::vector<double>> rows;
  for (int i = 1; i <= 10; ++i) {
    const double p = std::pow(0.65, i);
    rows.push_back({0.75 - p, 0.25 + p});
  }
  return from_rows(rows);
}

// Experiment 7: 22 arms, three staggered segments sharing one gap value.
// The segment spacing is not printed in the source description; 0.05 is the
// spacing under which every arm has the same gap (asserted in tests).
MeanMatrix gen_common_gap() {
  const double c = 0.05;
  std::vector<std::vector<double>> rows;
  for (int i = 1; i <= 8; ++i)
    rows.push_back({0.3 + (i - 1) * c, 0.8 - (i - 1) * c});
  for (int i = 9; i <= 15; ++i)
    rows.push_back({0.25 + (i - 9) * c, 0.7 - (i - 9) * c});
  for (int i = 16; i <= 22; ++i)
    rows.push_back({rows[i - 8][0], rows[i - 8][1] + 0.05});
  return from_rows(rows);
}

// Experiment 8: geometric progression with a single optimal arm.
MeanMatrix gen_geometric() {
  std::vector<std::vector<double>> rows;
  for (int i = 1; i <= 5; ++i) {
    const double v = 0.75 - std::pow(0.25, i);
    rows.push_back({v, v});
  }
  return from_rows(rows);
}

}  // namespace

BanditInstance gen_experiment(int id, std::uint64_t seed) {
  Xoshiro256pp rng{derive_seed(seed, 0x67656E /* "gen" */, id)};
  switch (id) {
    case 1: return {gen_convex_front(rng), 1.0};
    case 2: return {gen_unique_dominators(), 1.0};
    case 3: return {gen_circle(), 1.0};
    case 4: return {gen_high_dim(rng), 1.0};
    case 5: return {gen_two_clusters(rng), 1.0};
    case 6: return {gen_all_optimal(), 1.0};
    case 7: return {gen_common_gap(), 1.0};
    case 8: return {gen_geometric(), 1.0};
    default:
      throw std::invalid_argument("gen_experiment: id must be in 1..8");
  }
}

namespace {

std::vector<double> parse_numbers(const std::string& line, int lineno) {
  std::vector<double> out;
  std::stringstream ss{line};
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      throw parse_error("line " + std::to_string(lineno) +
                        ": cannot parse value '" + cell + "'");
    }
    while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
      ++used;
    if (used != cell.size())
      throw parse_error("line " + std::to_string(lineno) +
                        ": trailing junk in value '" + cell + "'");
    out.push_back(v);
  }
  if (out.empty())
    throw parse_error("line " + std::to_string(lineno) + ": empty row");
  return out;
}

bool is_blank_or_comment(const std::string& line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

BanditInstance load_instance(const std::string& path, bool has_header,
                             double default_sigma) {
  std::ifstream in{path};
  if (!in) throw parse_error("cannot open instance file: " + path);

  std::vector<std::vector<double>> rows;
  std::vector<double> sigma;
  int declared_k = -1, declared_d = -1;
  double header_sigma = default_sigma;
  bool header_pending = has_header;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank_or_comment(line)) continue;
    if (header_pending) {
      const auto vals = parse_numbers(line, lineno);
      if (vals.size() != 2 && vals.size() != 3)
        throw parse_error("line " + std::to_string(lineno) +
                          ": header must be K,D or K,D,sigma");
      declared_k = static_cast<int>(vals[0]);
      declared_d = static_cast<int>(vals[1]);
      if (vals.size() == 3) header_sigma = vals[2];
      header_pending = false;
      continue;
    }
    if (line.rfind("sigma", 0) == 0) {
      const auto vals = parse_numbers(line.substr(line.find(',') + 1), lineno);
      sigma = vals;
      continue;
    }
    rows.push_back(parse_numbers(line, lineno));
    if (rows.back().size() != rows.front().size())
      throw parse_error("line " + std::to_string(lineno) +
                        ": row has " + std::to_string(rows.back().size()) +
                        " values, expected " +
                        std::to_string(rows.front().size()));
  }

  if (rows.size() < 2) throw parse_error(path + ": need at least two arms");
  const int K = static_cast<int>(rows.size());
  const int D = static_cast<int>(rows.front().size());
  if (declared_k >= 0 && (declared_k != K || declared_d != D))
    throw parse_error(path + ": header declares " + std::to_string(declared_k) +
                      "x" + std::to_string(declared_d) + " but file holds " +
                      std::to_string(K) + "x" + std::to_string(D));

  MeanMatrix means = from_rows(rows);  // validates finiteness
  if (sigma.empty()) sigma.assign(D, header_sigma);
  return {std::move(means), std::move(sigma)};
}

void save_instance(const BanditInstance& instance, const std::string& path) {
  std::ofstream out{path};
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  char buf[32];
  for (int i = 0; i < instance.means.arms(); ++i) {
    for (int d = 0; d < instance.means.dims(); ++d) {
      std::snprintf(buf, sizeof buf, "%.17g", instance.means(i, d));
      out << (d ? "," : "") << buf;
    }
    out << '\n';
  }
  out << "sigma";
  for (double s : instance.sigma) {
    std::snprintf(buf, sizeof buf, "%.17g", s);
    out << ',' << buf;
  }
  out << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace psi
