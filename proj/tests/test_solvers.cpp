#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mcspai/dense_solve.hpp"
#include "mcspai/mc_engine.hpp"
#include "mcspai/solvers.hpp"
#include "mcspai/synthetic.hpp"

using namespace mcspai;

namespace {

std::vector<double> unit_vector(index_t n, index_t i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    return e;
}

}  // namespace

TEST_CASE("gmres: identity converges in one iteration") {
    SolverConfig cfg;
    auto rep = gmres(CsrMatrix::identity(4), unit_vector(4, 0), nullptr, cfg);
    CHECK(rep.converged);
    CHECK(rep.iterations == 1);
    CHECK(rep.x[0] == doctest::Approx(1.0));
    CHECK(rep.residual_history.size() == rep.iterations + 1);
    CHECK(rep.residual_history[0] == 1.0);
}

TEST_CASE("gmres: diagonal system solves within the breakdown bound") {
    std::vector<index_t> idx(10);
    std::vector<double> vals(10);
    for (index_t i = 0; i < 10; ++i) {
        idx[i] = i;
        vals[i] = static_cast<double>(i + 1);
    }
    auto b = CsrMatrix::from_triplets(10, idx, idx, vals);
    SolverConfig cfg;
    cfg.rel_tol = 1e-10;
    auto rep = gmres(b, std::vector<double>(10, 1.0), nullptr, cfg);
    CHECK(rep.converged);
    CHECK(rep.iterations <= 10);
    for (index_t i = 0; i < 10; ++i)
        CHECK(rep.x[i] == doctest::Approx(1.0 / static_cast<double>(i + 1)));
}

TEST_CASE("gmres: residual history nonincreasing within a restart cycle") {
    auto b = make_convection_diffusion(12);
    SolverConfig cfg;
    cfg.restart = 30;
    cfg.rel_tol = 1e-8;
    auto rep = gmres(b, ones_product_rhs(b), nullptr, cfg);
    CHECK(rep.converged);
    const std::size_t cycle =
        std::min<std::size_t>(rep.residual_history.size(),
                              static_cast<std::size_t>(cfg.restart) + 1);
    for (std::size_t i = 1; i < cycle; ++i)
        CHECK(rep.residual_history[i] <= rep.residual_history[i - 1] + 1e-15);
}

TEST_CASE("gmres with the exact inverse converges in one iteration") {
    auto b = make_random_ddm(24, 0.3, 8);
    auto exact = densify_to_csr(dense_inverse(csr_to_dense(b)));
    SolverConfig cfg;
    auto rep = gmres(b, ones_product_rhs(b), &exact, cfg);
    CHECK(rep.converged);
    CHECK(rep.iterations == 1);
    CHECK(rep.preconditioned);
}

TEST_CASE("gmres input validation") {
    SolverConfig cfg;
    CHECK_THROWS_AS(
        gmres(CsrMatrix::identity(3), std::vector<double>(2, 1.0), nullptr, cfg),
        std::invalid_argument);
    auto wrong = CsrMatrix::identity(2);
    CHECK_THROWS_AS(gmres(CsrMatrix::identity(3), std::vector<double>(3, 1.0),
                          &wrong, cfg),
                    std::invalid_argument);
}

TEST_CASE("bicgstab: identity in one iteration") {
    SolverConfig cfg;
    cfg.method = SolverMethod::bicgstab;
    auto rep = bicgstab(CsrMatrix::identity(4), unit_vector(4, 1), nullptr, cfg);
    CHECK(rep.converged);
    CHECK(rep.iterations == 1);
    CHECK(rep.residual_history.size() == rep.iterations + 1);
}

TEST_CASE("bicgstab: SPD tridiagonal against the dense oracle") {
    auto b = make_tridiagonal(64);
    SolverConfig cfg;
    cfg.method = SolverMethod::bicgstab;
    cfg.rel_tol = 1e-8;
    auto rhs = ones_product_rhs(b);
    auto rep = bicgstab(b, rhs, nullptr, cfg);
    CHECK(rep.converged);
    auto exact = dense_solve(csr_to_dense(b), rhs);
    for (index_t i = 0; i < 64; ++i)
        CHECK(std::abs(rep.x[i] - exact[i]) < 1e-6);
}

TEST_CASE("unconverged run is reported, not thrown") {
    auto b = make_convection_diffusion(16);
    SolverConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.max_iters = 3;
    auto rep = gmres(b, ones_product_rhs(b), nullptr, cfg);
    CHECK_FALSE(rep.converged);
    CHECK(rep.iterations == 3);
    CHECK(rep.final_rel_residual > cfg.rel_tol);
}

TEST_CASE("final residual is the true residual even when preconditioned") {
    auto b = make_random_ddm(30, 0.2, 14);
    McConfig mc;
    mc.epsilon = 0.05;
    mc.alpha = 1.5;
    auto inv = compute_preconditioner(b, mc);
    SolverConfig cfg;
    auto rhs = ones_product_rhs(b);
    auto rep = gmres(b, rhs, &inv.m, cfg);
    REQUIRE(rep.converged);
    // recompute ||rhs - Bx|| / ||rhs|| against the unpreconditioned operator
    auto bx = spmv(b, rep.x);
    double num = 0.0, den = 0.0;
    for (index_t i = 0; i < b.n; ++i) {
        num += (rhs[i] - bx[i]) * (rhs[i] - bx[i]);
        den += rhs[i] * rhs[i];
    }
    CHECK(rep.final_rel_residual ==
          doctest::Approx(std::sqrt(num / den)).epsilon(1e-12));
}

TEST_CASE("preconditioning reduces gmres iterations on a stiff system") {
    auto b = make_convection_diffusion(24);  // n = 576
    McConfig mc;
    mc.epsilon = 0.05;
    mc.delta = 0.01;
    mc.alpha = 1.5;
    mc.retain_k = 32;
    mc.master_seed = 5;
    auto inv = compute_preconditioner(b, mc);
    SolverConfig cfg;
    auto rhs = ones_product_rhs(b);
    auto plain = gmres(b, rhs, nullptr, cfg);
    auto prec = gmres(b, rhs, &inv.m, cfg);
    REQUIRE(plain.converged);
    REQUIRE(prec.converged);
    CHECK(prec.iterations < plain.iterations);
}
