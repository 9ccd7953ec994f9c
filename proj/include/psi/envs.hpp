#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psi/matrix.hpp"
#include "psi/rng.hpp"

namespace psi {

/// Ground-truth bandit: mean matrix plus per-dimension Gaussian noise scales.
/// sigma entries must be >= 0; zero gives a degenerate (noise-free) arm,
/// which the evaluation harness uses as the exact-means limit.
struct BanditInstance {
  MeanMatrix means;
  std::vector<double> sigma;  // length D

  BanditInstance(MeanMatrix m, std::vector<double> s);
  BanditInstance(MeanMatrix m, double s);
};

/// Gaussian sampler with one generator per arm, derived from
/// (master_seed, stream). Identical triples replay identical sequences;
/// distinct streams are independent. The instance must outlive the sampler.
class SeededSampler {
 public:
  SeededSampler(const BanditInstance& instance, std::uint64_t master_seed,
                std::uint64_t stream);

  int arms() const { return instance_->means.arms(); }
  int dims() const { return instance_->means.dims(); }

  void sample(int arm, double* out);

 private:
  const BanditInstance* instance_;
  std::vector<Xoshiro256pp> engines_;
  bool noise_free_;
};

/// The eight synthetic benchmark instances. Generators 2, 3, 6, 7, 8 are
/// closed-form; 1, 4, 5 draw their random blocks from the seed (bit-identical
/// per (id, seed)). Default noise scale is 1 in every dimension; callers
/// override sigma as needed.
BanditInstance gen_experiment(int id, std::uint64_t seed);

/// Instance CSV: optional leading "K,D[,sigma]" header (enabled by the flag),
/// one comma-separated mean row per arm, and an optional trailing
/// "sigma,s1,...,sD" row. '#' lines are comments. Malformed content raises
/// parse_error with the line number; non-finite values raise
/// std::invalid_argument.
BanditInstance load_instance(const std::string& path, bool has_header = false,
                             double default_sigma = 1.0);

void save_instance(const BanditInstance& instance, const std::string& path);

}  // namespace psi
