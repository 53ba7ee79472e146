#ifndef MCSPAI_DENSE_SOLVE_HPP
#define MCSPAI_DENSE_SOLVE_HPP

#include "mcspai/csr.hpp"

namespace mcspai {

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Direct inverse by Gauss-Jordan elimination with partial pivoting.
/// Throws SingularMatrixError when a pivot magnitude drops below pivot_tol.
DenseMatrix dense_inverse(const DenseMatrix& m, double pivot_tol = 1e-12);

/// Solves m * x = b by LU with partial pivoting.
std::vector<double> dense_solve(const DenseMatrix& m, std::vector<double> b,
                                double pivot_tol = 1e-12);

}  // namespace mcspai

#endif
