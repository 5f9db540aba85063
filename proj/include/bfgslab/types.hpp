#pragma once

#include <Eigen/Dense>

namespace bfgslab {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace bfgslab
