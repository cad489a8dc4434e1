#pragma once

#include "miqubo/model.hpp"

namespace miqubo {

/// Expansion enumerates all n! permutations; past this n the factorial cost
/// is prohibitive and expand_objective refuses the problem.
inline constexpr int kDefaultExpansionLimit = 10;

/// k_ij = (s_i * s_j + 1) / 2, always exactly 0 or 1.
int masking_value(const SpinAssignment& s, int i, int j);

/// Entrywise product of the covariance with the selection's masking matrix.
Eigen::MatrixXd masked_matrix(const CovarianceMatrix& cov, const SensorSelection& sel);

/// det of the masked matrix; equals det(Sigma_SS) * det(Sigma_TT) with the
/// convention that an empty block has determinant 1.
double masked_determinant(const CovarianceMatrix& cov, const SensorSelection& sel);

/// s_i^2 = 1 reduction: the set of indices appearing an odd number of times.
Monomial reduce_monomial(const std::vector<int>& indices);

/// Compiles the covariance into the multilinear spin polynomial f whose value
/// at every assignment s equals masked_determinant(cov, selection_from_spins(s)).
///
/// The determinant is expanded over all n! permutations with parity sign; each
/// permutation contributes its covariance product times the masking factors
/// (s_j * s_{i_j} + 1)/2 of its non-fixed positions (fixed points mask to 1).
/// Coefficients whose magnitude falls below 1e-12 of the largest are dropped
/// as cancellation residue.
SpinPolynomial expand_objective(const CovarianceMatrix& cov, int expansion_limit = kDefaultExpansionLimit);

}  // namespace miqubo
