#pragma once

#include <Eigen/Dense>

namespace arago::detail {

/// Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch).
struct GaussLegendre {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  explicit GaussLegendre(int n);
};

const GaussLegendre& gauss_legendre_20();

}  // namespace arago::detail
