#include "quadrature.hpp"

#include <cmath>

namespace arago::detail {

GaussLegendre::GaussLegendre(int n) {
  // Jacobi matrix of the Legendre recurrence; eigenvalues are the nodes and
  // the squared first eigenvector components (times mu_0 = 2) the weights.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    jacobi(i, i - 1) = b;
    jacobi(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  nodes = solver.eigenvalues();
  weights = 2.0 * solver.eigenvectors().row(0).transpose().array().square();
}

const GaussLegendre& gauss_legendre_20() {
  static const GaussLegendre rule(20);
  return rule;
}

}  // namespace arago::detail
