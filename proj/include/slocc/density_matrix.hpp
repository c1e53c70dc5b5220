#pragma once

#include <vector>

#include <Eigen/Dense>

#include "slocc/types.hpp"

namespace slocc {

/// Hermitian PSD matrix with explicit basis-mode labels. `weight` is the
/// pre-normalization trace, used downstream as a conditional probability.
class DensityMatrix {
 public:
  DensityMatrix(std::vector<Mode> basis, Eigen::MatrixXcd matrix, double weight,
                double tol = kTol);

  const std::vector<Mode>& basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return mat_; }
  double weight() const { return weight_; }
  double trace() const { return mat_.trace().real(); }

  /// matrix() scaled to unit trace.
  Eigen::MatrixXcd normalized() const;

  Complex element(const Mode& row, const Mode& col) const;

 private:
  std::vector<Mode> basis_;
  Eigen::MatrixXcd mat_;
  double weight_;
};

/// -sum_i lambda_i log2 lambda_i over the eigenvalues of a unit-trace rho,
/// with 0 log 0 = 0. Eigenvalues in [-tol, 0) are clamped to 0; anything
/// more negative is a domain error.
double von_neumann_entropy(const DensityMatrix& rho, double tol = kTol);

}  // namespace slocc
