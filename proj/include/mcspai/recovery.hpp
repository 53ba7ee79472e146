#ifndef MCSPAI_RECOVERY_HPP
#define MCSPAI_RECOVERY_HPP

#include "mcspai/csr.hpp"

namespace mcspai {

struct RecoveryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The diagonal perturbation S = B_hat - B and the update order
/// (descending row index).
struct RecoveryPlan {
    std::vector<double> s_diag;
};

/// Undoes the diagonal augmentation by n rank-one Sherman-Morrison updates:
/// for i = n-1 down to 0,
///   M <- M + (s_i / (1 - s_i * M[i][i])) * col_i(M) (x) row_i(M).
/// Given the exact B_hat^{-1} this returns B^{-1}. Throws RecoveryError when
/// an update denominator magnitude drops to tol or below (the intermediate
/// matrix is numerically singular).
DenseMatrix recover_inverse(const DenseMatrix& b_hat_inv,
                            const RecoveryPlan& plan, double tol = 1e-12);

}  // namespace mcspai

#endif
