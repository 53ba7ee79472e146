#include "mcspai/solvers.hpp"

#include <chrono>
#include <cmath>

namespace mcspai {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& v) { return std::sqrt(dot(v, v)); }

void axpy(double a, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

/// Applies the (optionally preconditioned) operator: y = M * (B * x).
std::vector<double> apply_op(const CsrMatrix& b_mat, const CsrMatrix* precond,
                             const std::vector<double>& x) {
    std::vector<double> y = spmv(b_mat, x);
    if (precond) y = spmv(*precond, y);
    return y;
}

double true_rel_residual(const CsrMatrix& b_mat, const std::vector<double>& rhs,
                         const std::vector<double>& x, double rhs_norm) {
    std::vector<double> r = spmv(b_mat, x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = rhs[i] - r[i];
    return norm2(r) / rhs_norm;
}

using clock_type = std::chrono::steady_clock;

double elapsed_ms(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0)
        .count();
}

}  // namespace

std::vector<double> ones_product_rhs(const CsrMatrix& b_mat) {
    return spmv(b_mat, std::vector<double>(b_mat.n, 1.0));
}

std::string method_name(SolverMethod m) {
    return m == SolverMethod::gmres ? "gmres" : "bicgstab";
}

SolveReport gmres(const CsrMatrix& b_mat, const std::vector<double>& rhs,
                  const CsrMatrix* precond, const SolverConfig& cfg) {
    const auto t0 = clock_type::now();
    const index_t n = b_mat.n;
    if (static_cast<index_t>(rhs.size()) != n)
        throw std::invalid_argument("gmres: rhs dimension mismatch");
    if (precond && precond->n != n)
        throw std::invalid_argument("gmres: preconditioner dimension mismatch");

    SolveReport rep;
    rep.method_echo = SolverMethod::gmres;
    rep.preconditioned = precond != nullptr;

    const double rhs_norm = norm2(rhs);
    if (rhs_norm == 0.0) throw std::invalid_argument("gmres: rhs is zero");

    std::vector<double> b_prec = precond ? spmv(*precond, rhs) : rhs;
    const double b_prec_norm = norm2(b_prec);

    std::vector<double> x(n, 0.0);
    rep.residual_history.push_back(1.0);

    const index_t restart = cfg.restart;
    std::vector<std::vector<double>> v;  // Krylov basis
    std::vector<std::vector<double>> h(restart + 1,
                                       std::vector<double>(restart, 0.0));
    std::vector<double> cs(restart), sn(restart), g(restart + 1);

    bool done = false;
    while (!done && rep.iterations < cfg.max_iters) {
        // (re)start from the current x
        std::vector<double> r = apply_op(b_mat, precond, x);
        for (index_t i = 0; i < n; ++i) r[i] = b_prec[i] - r[i];
        const double beta = norm2(r);
        if (beta < 1e-30) {
            rep.breakdown = true;
            break;
        }
        v.assign(1, r);
        for (index_t i = 0; i < n; ++i) v[0][i] /= beta;
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = beta;

        index_t j = 0;
        bool cycle_end = false;
        while (j < restart && !cycle_end) {
            std::vector<double> w = apply_op(b_mat, precond, v[j]);
            for (index_t i = 0; i <= j; ++i) {  // modified Gram-Schmidt
                h[i][j] = dot(w, v[i]);
                axpy(-h[i][j], v[i], w);
            }
            h[j + 1][j] = norm2(w);
            const bool lucky = h[j + 1][j] < 1e-14;
            if (!lucky) {
                v.push_back(w);
                for (index_t i = 0; i < n; ++i) v[j + 1][i] /= h[j + 1][j];
            }
            // Givens rotations keep the least-squares problem triangular.
            for (index_t i = 0; i < j; ++i) {
                const double t = cs[i] * h[i][j] + sn[i] * h[i + 1][j];
                h[i + 1][j] = -sn[i] * h[i][j] + cs[i] * h[i + 1][j];
                h[i][j] = t;
            }
            const double denom =
                std::sqrt(h[j][j] * h[j][j] + h[j + 1][j] * h[j + 1][j]);
            if (denom < 1e-30) {
                cs[j] = 1.0;
                sn[j] = 0.0;
            } else {
                cs[j] = h[j][j] / denom;
                sn[j] = h[j + 1][j] / denom;
            }
            h[j][j] = cs[j] * h[j][j] + sn[j] * h[j + 1][j];
            h[j + 1][j] = 0.0;
            g[j + 1] = -sn[j] * g[j];
            g[j] = cs[j] * g[j];

            ++j;
            ++rep.iterations;
            const double rel = std::abs(g[j]) / b_prec_norm;
            rep.residual_history.push_back(rel);

            if (rel <= cfg.rel_tol || lucky || rep.iterations >= cfg.max_iters) {
                cycle_end = true;
                if (lucky && rel > cfg.rel_tol) rep.breakdown = true;
            }
        }

        // back-substitute y and update x
        std::vector<double> y(j, 0.0);
        for (index_t i = j; i-- > 0;) {
            double s = g[i];
            for (index_t k = i + 1; k < j; ++k) s -= h[i][k] * y[k];
            y[i] = h[i][i] != 0.0 ? s / h[i][i] : 0.0;
        }
        for (index_t k = 0; k < j; ++k) axpy(y[k], v[k], x);

        const double true_rel = true_rel_residual(b_mat, rhs, x, rhs_norm);
        if (true_rel <= cfg.rel_tol) {
            rep.converged = true;
            done = true;
        } else if (rep.breakdown) {
            done = true;
        }
    }

    rep.final_rel_residual = true_rel_residual(b_mat, rhs, x, rhs_norm);
    rep.converged = rep.final_rel_residual <= cfg.rel_tol;
    rep.x = std::move(x);
    rep.wall_ms = elapsed_ms(t0);
    return rep;
}

SolveReport bicgstab(const CsrMatrix& b_mat, const std::vector<double>& rhs,
                     const CsrMatrix* precond, const SolverConfig& cfg) {
    const auto t0 = clock_type::now();
    const index_t n = b_mat.n;
    if (static_cast<index_t>(rhs.size()) != n)
        throw std::invalid_argument("bicgstab: rhs dimension mismatch");
    if (precond && precond->n != n)
        throw std::invalid_argument("bicgstab: preconditioner dimension mismatch");

    SolveReport rep;
    rep.method_echo = SolverMethod::bicgstab;
    rep.preconditioned = precond != nullptr;

    const double rhs_norm = norm2(rhs);
    if (rhs_norm == 0.0) throw std::invalid_argument("bicgstab: rhs is zero");

    std::vector<double> b_prec = precond ? spmv(*precond, rhs) : rhs;
    const double b_prec_norm = norm2(b_prec);

    std::vector<double> x(n, 0.0);
    std::vector<double> r = b_prec;
    std::vector<double> r0 = r;
    std::vector<double> p(n, 0.0), vv(n, 0.0);
    double rho = 1.0, alpha = 1.0, omega = 1.0;

    rep.residual_history.push_back(norm2(r) / b_prec_norm);

    while (rep.iterations < cfg.max_iters) {
        const double rho1 = dot(r0, r);
        if (std::abs(rho1) < 1e-30) {
            rep.breakdown = true;
            break;
        }
        const double beta = (rho1 / rho) * (alpha / omega);
        for (index_t i = 0; i < n; ++i)
            p[i] = r[i] + beta * (p[i] - omega * vv[i]);
        vv = apply_op(b_mat, precond, p);
        const double r0v = dot(r0, vv);
        if (std::abs(r0v) < 1e-30) {
            rep.breakdown = true;
            break;
        }
        alpha = rho1 / r0v;
        std::vector<double> s = r;
        axpy(-alpha, vv, s);
        std::vector<double> t = apply_op(b_mat, precond, s);
        const double tt = dot(t, t);
        omega = tt > 0.0 ? dot(t, s) / tt : 0.0;
        axpy(alpha, p, x);
        axpy(omega, s, x);
        r = s;
        axpy(-omega, t, r);
        rho = rho1;

        ++rep.iterations;
        const double rel = norm2(r) / b_prec_norm;
        rep.residual_history.push_back(rel);
        if (rel <= cfg.rel_tol &&
            true_rel_residual(b_mat, rhs, x, rhs_norm) <= cfg.rel_tol)
            break;
        if (omega == 0.0) {
            rep.breakdown = true;
            break;
        }
    }

    rep.final_rel_residual = true_rel_residual(b_mat, rhs, x, rhs_norm);
    rep.converged = rep.final_rel_residual <= cfg.rel_tol;
    rep.x = std::move(x);
    rep.wall_ms = elapsed_ms(t0);
    return rep;
}

SolveReport solve(const CsrMatrix& b_mat, const std::vector<double>& rhs,
                  const CsrMatrix* precond, const SolverConfig& cfg) {
    return cfg.method == SolverMethod::gmres ? gmres(b_mat, rhs, precond, cfg)
                                             : bicgstab(b_mat, rhs, precond, cfg);
}

}  // namespace mcspai
