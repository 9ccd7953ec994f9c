#include "psi/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace psi {

MeanMatrix::MeanMatrix(int arms, int dims, std::vector<double> row_major)
    : arms_(arms), dims_(dims), data_(std::move(row_major)) {
  if (arms_ < 2) throw std::invalid_argument("MeanMatrix: need at least 2 arms");
  if (dims_ < 1) throw std::invalid_argument("MeanMatrix: need at least 1 dimension");
  if (data_.size() != static_cast<std::size_t>(arms_) * dims_)
    throw std::invalid_argument("MeanMatrix: data size does not match arms*dims");
  for (double v : data_)
    if (!std::isfinite(v))
      throw std::invalid_argument("MeanMatrix: entries must be finite");
}

MeanMatrix MeanMatrix::with_row(int arm, std::span<const double> values) const {
  check_arm(*this, arm);
  if (values.size() != static_cast<std::size_t>(dims_))
    throw std::invalid_argument("MeanMatrix::with_row: wrong row length");
  std::vector<double> data = data_;
  for (int d = 0; d < dims_; ++d)
    data[static_cast<std::size_t>(arm) * dims_ + d] = values[d];
  return {arms_, dims_, std::move(data)};
}

bool MeanMatrix::rows_equal(int a, int b) const {
  for (int d = 0; d < dims_; ++d)
    if ((*this)(a, d) != (*this)(b, d)) return false;
  return true;
}

void check_arm(const MeanMatrix& theta, int arm) {
  if (arm < 0 || arm >= theta.arms())
    throw std::invalid_argument("arm index " + std::to_string(arm) +
                                " out of range [0, " +
                                std::to_string(theta.arms()) + ")");
}

}  // namespace psi
