#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/LU>

namespace miqubo {

/// Determinant via LU factorization with partial pivoting (sign from row
/// swaps). The determinant of an empty 0x0 matrix is 1 by convention.
inline double determinant_lu(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  if (m.rows() == 0) return 1.0;
  if (m.rows() == 1) return m(0, 0);
  return Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant();
}

/// log(det(m)) for a symmetric positive-definite matrix, computed from the
/// Cholesky factor diagonal. log(det) of an empty matrix is 0.
inline double log_determinant_spd(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

}  // namespace miqubo
