#pragma once

#include <cmath>
#include <cstdint>

namespace psi {

/// splitmix64 step; used for seeding and stream derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// xoshiro256++ with splitmix64 seeding. Fixed algorithm so that identical
/// seeds reproduce identical streams across runs of the same build.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    for (auto& word : s_) word = splitmix64(seed);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// One standard Gaussian pair via the polar method (rejection loop is part
  /// of the stream contract: outputs are a pure function of the seed).
  void gaussian_pair(double& z0, double& z1) {
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    z0 = u * f;
    z1 = v * f;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

/// Derives the per-arm generator seed for (master_seed, stream, arm).
/// Distinct streams give independent per-arm sequences by construction.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream,
                                 std::uint64_t arm) {
  std::uint64_t h = master_seed;
  (void)splitmix64(h);
  h ^= 0xA0761D6478BD642FULL * (stream + 1);
  (void)splitmix64(h);
  h ^= 0xE7037ED1A0B428DBULL * (arm + 1);
  return splitmix64(h);
}

}  // namespace psi
