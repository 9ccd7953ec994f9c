#include "psi/ege.hpp"

#include <algorithm>

#include "psi/pareto.hpp"

namespace psi {

namespace {

bool is_subset(std::span<const int> small, std::span<const int> big) {
  // both ascending
  std::size_t j = 0;
  for (int v : small) {
    while (j < big.size() && big[j] < v) ++j;
    if (j == big.size() || big[j] != v) return false;
  }
  return true;
}

}  // namespace

int psi_k_loss(std::span<const int> recommended, std::span<const int> optimal,
               int k) {
  const bool success =
      static_cast<int>(recommended.size()) == k
          ? is_subset(recommended, optimal)
          : std::equal(recommended.begin(), recommended.end(), optimal.begin(),
                       optimal.end());
  return success ? 0 : 1;
}

int psi_k_loss(std::span<const int> recommended, const MeanMatrix& truth,
               int k) {
  const std::vector<int> optimal = pareto_set(truth);
  return psi_k_loss(recommended, std::span<const int>{optimal}, k);
}

}  // namespace psi
