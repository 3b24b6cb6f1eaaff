#pragma once

#include <Eigen/Dense>

namespace esvs {

// Truncated Fock-space state: amps[k] is the coefficient of |k>.
struct FockVector {
  int dim = 0;
  Eigen::VectorXcd amps;
};

// Dense operator on the same truncated space.
struct FockOperator {
  int dim = 0;
  Eigen::MatrixXcd entries;
};

}  // namespace esvs
