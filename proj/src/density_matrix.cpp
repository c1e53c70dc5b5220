#include "slocc/density_matrix.hpp"

#include <cmath>

namespace slocc {

DensityMatrix::DensityMatrix(std::vector<Mode> basis, Eigen::MatrixXcd matrix,
                             double weight, double tol)
    : basis_(std::move(basis)), mat_(std::move(matrix)), weight_(weight) {
  const auto n = static_cast<Eigen::Index>(basis_.size());
  if (mat_.rows() != n || mat_.cols() != n) {
    throw std::domain_error("density matrix dimension does not match basis size");
  }
  if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw std::domain_error("density matrix is not Hermitian within tolerance");
  }
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat_,
                                                       Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol * std::max(1.0, trace())) {
      throw std::domain_error("density matrix is not positive semidefinite");
    }
  }
}

Eigen::MatrixXcd DensityMatrix::normalized() const {
  const double t = trace();
  if (t <= 0.0) {
    throw std::domain_error("cannot normalize a zero-trace density matrix");
  }
  return mat_ / t;
}

Complex DensityMatrix::element(const Mode& row, const Mode& col) const {
  Eigen::Index i = -1, j = -1;
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(basis_.size()); ++k) {
    if (basis_[k] == row) i = k;
    if (basis_[k] == col) j = k;
  }
  if (i < 0 || j < 0) throw std::domain_error("mode not in density matrix basis");
  return mat_(i, j);
}

double von_neumann_entropy(const DensityMatrix& rho, double tol) {
  if (std::abs(rho.trace() - 1.0) > 1e-9) {
    throw std::domain_error("entropy requires a unit-trace density matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix(),
                                                     Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double lambda = es.eigenvalues()(i);
    if (lambda < -tol) {
      throw std::domain_error("negative eigenvalue beyond tolerance in entropy");
    }
    if (lambda <= 0.0) continue;
    s -= lambda * std::log2(lambda);
  }
  return std::max(0.0, s);
}

}  // namespace slocc
