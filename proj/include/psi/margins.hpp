#pragma once

#include <span>
#include <vector>

namespace psi {

/// Pairwise margins of a set of n mean vectors (row-major, d dims each).
/// m(i,j) holds max_d (row_i[d] - row_j[d]): the smallest uniform increase of
/// row_j that makes it dominate row_i. The opposite margin min_d (row_j - row_i)
/// is exactly -m(i,j).
class MarginMatrix {
 public:
  MarginMatrix(const double* rows, int n, int d);

  int size() const { return n_; }
  double max_margin(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * n_ + j];
  }
  double min_margin(int i, int j) const { return -max_margin(i, j); }
  const double* row(int i) const {
    return data_.data() + static_cast<std::size_t>(i) * n_;
  }

  /// Recompute row/column i after rows[i] changed (incremental update).
  void update_point(const double* rows, int i);

 private:
  int n_;
  int d_;
  std::vector<double> cols_;  // column-major copy of the rows
  std::vector<double> data_;  // n x n margins, diagonal zero
  std::vector<double> scratch_;
};

/// Per-set gap evaluation without reference to the true Pareto set.
///
/// displacement[i] = max_{j != i} min_d (row_j - row_i): positive iff some row
/// dominates i with a uniform margin; negative magnitude measures how far i is
/// from being dominated. `front` marks rows with displacement < 0, i.e. rows no
/// other row beats by a strictly positive margin in every dimension.
/// gap[i] = displacement[i] off the front, else
///   min_{j != i} [ m(i,j) /\ (m(j,i)^+ + displacement[j]^+) ].
struct SetGaps {
  std::vector<double> displacement;
  std::vector<double> gap;
  std::vector<char> front;
};

SetGaps unified_set_gaps(const MarginMatrix& margins);
SetGaps unified_set_gaps(const double* rows, int n, int d);

/// Indices (into the set) of rows on the strict-margin front.
std::vector<int> strict_front(const double* rows, int n, int d);

}  // namespace psi
