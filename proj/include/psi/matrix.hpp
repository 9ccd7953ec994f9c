#pragma once

#include <span>
#include <vector>

namespace psi {

/// K x D matrix of arm means; row i is the mean vector of arm i.
/// Entries are validated finite on construction, K >= 2 and D >= 1.
class MeanMatrix {
 public:
  MeanMatrix(int arms, int dims, std::vector<double> row_major);

  int arms() const { return arms_; }
  int dims() const { return dims_; }

  double operator()(int arm, int dim) const {
    return data_[static_cast<std::size_t>(arm) * dims_ + dim];
  }
  std::span<const double> row(int arm) const {
    return {data_.data() + static_cast<std::size_t>(arm) * dims_,
            static_cast<std::size_t>(dims_)};
  }
  std::span<const double> flat() const { return data_; }

  /// Copy with one row replaced (re-validates).
  MeanMatrix with_row(int arm, std::span<const double> values) const;

  bool rows_equal(int a, int b) const;

  friend bool operator==(const MeanMatrix&, const MeanMatrix&) = default;

 private:
  int arms_;
  int dims_;
  std::vector<double> data_;
};

/// Throws std::invalid_argument unless 0 <= arm < arms.
void check_arm(const MeanMatrix& theta, int arm);

}  // namespace psi
