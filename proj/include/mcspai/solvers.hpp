#ifndef MCSPAI_SOLVERS_HPP
#define MCSPAI_SOLVERS_HPP

#include <string>
#include <vector>

#include "mcspai/csr.hpp"

namespace mcspai {

enum class SolverMethod { gmres, bicgstab };

struct SolverConfig {
    SolverMethod method = SolverMethod::gmres;
    double rel_tol = 1e-6;
    index_t max_iters = 30000;
    index_t restart = 50;  // GMRES only
};

struct SolveReport {
    bool converged = false;
    index_t iterations = 0;
    double final_rel_residual = 0.0;  // always the true residual ||b-Bx||/||b||
    std::vector<double> residual_history;  // length iterations + 1
    double wall_ms = 0.0;
    SolverMethod method_echo = SolverMethod::gmres;
    bool preconditioned = false;
    bool breakdown = false;
    std::vector<double> x;
};

/// Restarted GMRES with modified Gram-Schmidt Arnoldi and left
/// preconditioning: solves (M B) x = M rhs, x0 = 0. Convergence is declared
/// only when the true residual ||rhs - B x||_2 / ||rhs||_2 meets rel_tol.
SolveReport gmres(const CsrMatrix& b_mat, const std::vector<double>& rhs,
                  const CsrMatrix* precond, const SolverConfig& cfg);

/// BiCGstab with left preconditioning; same residual contract as gmres.
SolveReport bicgstab(const CsrMatrix& b_mat, const std::vector<double>& rhs,
                     const CsrMatrix* precond, const SolverConfig& cfg);

SolveReport solve(const CsrMatrix& b_mat, const std::vector<double>& rhs,
                  const CsrMatrix* precond, const SolverConfig& cfg);

/// The default right-hand side convention: b = B * ones.
std::vector<double> ones_product_rhs(const CsrMatrix& b_mat);

std::string method_name(SolverMethod m);

}  // namespace mcspai

#endif
