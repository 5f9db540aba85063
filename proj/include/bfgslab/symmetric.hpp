#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "bfgslab/errors.hpp"
#include "bfgslab/types.hpp"

namespace bfgslab {

/// Average of M and its transpose. Applied after every update so symmetry
/// never drifts beyond construction.
template <typename Derived>
Eigen::MatrixX<typename Derived::Scalar> symmetrized(const Eigen::MatrixBase<Derived>& m) {
  return (m.derived() + m.derived().transpose()) / typename Derived::Scalar(2);
}

template <typename Derived>
typename Derived::Scalar asymmetry_norm(const Eigen::MatrixBase<Derived>& m) {
  return (m.derived() - m.derived().transpose()).norm();
}

/// True iff an unpivoted Cholesky factorization succeeds with positive pivots.
template <typename Derived>
bool spd_check(const Eigen::MatrixBase<Derived>& m) {
  Eigen::LLT<Eigen::MatrixX<typename Derived::Scalar>> llt(m.derived());
  return llt.info() == Eigen::Success;
}

/// Eigenvalues of a symmetric matrix in ascending order.
template <typename Derived>
Eigen::VectorX<typename Derived::Scalar> sym_eigvals(const Eigen::MatrixBase<Derived>& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixX<typename Derived::Scalar>> solver(
      m.derived(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NoConvergence();
  return solver.eigenvalues();
}

/// Rank-two inverse-Hessian update
///   H -> V H V' + s s' / (s'y),   V = I - s y' / (s'y).
/// Requires s'y > 0 (throws CurvatureViolation otherwise). The result is
/// exactly symmetric and stays positive definite whenever H is.
template <typename HDerived, typename SDerived, typename YDerived>
Eigen::MatrixX<typename HDerived::Scalar> bfgs_update(const Eigen::MatrixBase<HDerived>& h,
                                                      const Eigen::MatrixBase<SDerived>& s,
                                                      const Eigen::MatrixBase<YDerived>& y) {
  using Scalar = typename HDerived::Scalar;
  using Mat = Eigen::MatrixX<Scalar>;
  const Scalar sy = s.derived().dot(y.derived());
  if (!(sy > Scalar(0))) throw CurvatureViolation();
  const Index n = h.rows();
  const Mat v = Mat::Identity(n, n) - s.derived() * y.derived().transpose() / sy;
  const Mat next = v * h.derived() * v.transpose() + s.derived() * s.derived().transpose() / sy;
  return symmetrized(next);
}

}  // namespace bfgslab
