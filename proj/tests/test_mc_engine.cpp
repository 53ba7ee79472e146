#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mcspai/dense_solve.hpp"
#include "mcspai/mc_engine.hpp"
#include "mcspai/synthetic.hpp"

using namespace mcspai;

namespace {

/// Test oracle: walks the ONLY possible path when every P row has at most
/// one nonzero, mirroring the engine's stopping rules. Independent of the
/// sampling machinery (no RNG involved).
SparseRow deterministic_walk_oracle(const SplitSystem& split, index_t r,
                                    const ChainBudget& budget, double delta) {
    std::vector<double> acc(split.a.n, 0.0);
    index_t state = r;
    double w = 1.0;
    acc[r] += 1.0;
    for (index_t step = 0; step < budget.max_len; ++step) {
        const index_t begin = split.p.row_begin(state);
        if (begin == split.p.row_end(state)) break;
        REQUIRE(split.p.row_end(state) - begin == 1);
        w *= split.a.values[begin] / split.p.values[begin];
        state = split.a.col_idx[begin];
        acc[state] += w;
        if (std::abs(w) < delta) break;
    }
    SparseRow row;
    for (index_t c = 0; c < split.a.n; ++c)
        if (acc[c] != 0.0) row.emplace_back(c, acc[c]);
    return row;
}

DenseMatrix neumann_oracle(const SplitSystem& split) {
    // dense inverse of (I - A)
    DenseMatrix ia = csr_to_dense(split.a);
    for (auto& v : ia.values) v = -v;
    for (index_t i = 0; i < ia.n; ++i) ia(i, i) += 1.0;
    return dense_inverse(ia);
}

double rms_error_vs_oracle(const CsrMatrix& b, index_t n_chains,
                           std::uint64_t seed) {
    auto sys = augment_and_split(b, 2.0, AugmentationMode::sign_aware);
    auto oracle = neumann_oracle(sys);
    McConfig cfg;
    cfg.delta = 1e-12;
    cfg.chains_override = n_chains;
    cfg.master_seed = seed;
    const ChainBudget budget = derive_chain_budget(cfg, sys.a_norm);
    double sq = 0.0;
    for (index_t r = 0; r < b.n; ++r) {
        auto row = estimate_row(sys, r, budget, cfg.delta,
                                RngStream(cfg.master_seed, r));
        std::vector<double> dense_row(b.n, 0.0);
        for (const auto& [c, v] : row) dense_row[c] = v;
        for (index_t c = 0; c < b.n; ++c) {
            const double e = dense_row[c] - oracle(r, c);
            sq += e * e;
        }
    }
    return std::sqrt(sq / static_cast<double>(b.n * b.n));
}

}  // namespace

TEST_CASE("derive_chain_budget") {
    McConfig cfg;

    SUBCASE("degenerate A = 0") {
        cfg.epsilon = 0.6745;
        auto b = derive_chain_budget(cfg, 0.0);
        CHECK(b.n_chains == 1);
        CHECK(b.max_len == 1);
    }
    SUBCASE("stated formulas") {
        cfg.epsilon = 0.05;
        cfg.delta = 0.01;
        auto b = derive_chain_budget(cfg, 0.5);
        CHECK(b.n_chains == 728);
        CHECK(b.max_len == 7);
    }
    SUBCASE("overrides win") {
        cfg.epsilon = 0.5;
        cfg.chains_override = 1000;
        cfg.max_len_override = 3;
        auto b = derive_chain_budget(cfg, 0.5);
        CHECK(b.n_chains == 1000);
        CHECK(b.max_len == 3);
    }
    SUBCASE("a_norm >= 1 rejected") {
        CHECK_THROWS_AS(derive_chain_budget(cfg, 1.0), std::invalid_argument);
    }
}

TEST_CASE("estimate_row: identity input absorbs immediately") {
    auto sys = augment_and_split(CsrMatrix::identity(4), 1.0,
                                 AugmentationMode::sign_aware);
    ChainBudget budget{50, 10};
    for (index_t r = 0; r < 4; ++r) {
        auto row = estimate_row(sys, r, budget, 0.01, RngStream(123, r));
        REQUIRE(row.size() == 1);
        CHECK(row[0].first == r);
        CHECK(row[0].second == 1.0);
    }
}

TEST_CASE("estimate_row: single-transition chain is exact") {
    // A = [[0, 0.5], [0, 0]] -> (I-A)^{-1} = I + A, row 0 = [1, 0.5]
    SplitSystem sys;
    sys.a = CsrMatrix::from_triplets(2, {0}, {1}, {0.5});
    sys.p = transition_probabilities(sys.a);
    sys.a_norm = 0.5;
    sys.b1_diag = {1.0, 1.0};
    sys.s_diag = {0.0, 0.0};
    ChainBudget budget{25, 8};
    for (std::uint64_t seed : {1ull, 99ull, 31337ull}) {
        auto row = estimate_row(sys, 0, budget, 1e-6, RngStream(seed, 0));
        REQUIRE(row.size() == 2);
        CHECK(row[0] == std::pair<index_t, double>{0, 1.0});
        CHECK(row[1] == std::pair<index_t, double>{1, 0.5});
    }
}

TEST_CASE("zero-variance chains equal the truncated Neumann series") {
    // circulant shift structure: each row of A (hence P) has one entry
    auto b = CsrMatrix::from_triplets(5, {0, 1, 2, 3, 4, 0, 1, 2, 3, 4},
                                      {0, 1, 2, 3, 4, 1, 2, 3, 4, 0},
                                      {2.0, -2.0, 2.0, 2.0, -2.0,
                                       0.7, -0.6, 0.5, 0.9, -0.8});
    auto sys = augment_and_split(b, 1.5, AugmentationMode::sign_aware);
    McConfig cfg;
    cfg.epsilon = 0.1;
    cfg.delta = 0.05;
    const ChainBudget budget = derive_chain_budget(cfg, sys.a_norm);
    for (std::uint64_t seed : {0ull, 7ull, 1234567ull}) {
        for (index_t r = 0; r < b.n; ++r) {
            auto row = estimate_row(sys, r, budget, cfg.delta,
                                    RngStream(seed, r));
            auto want = deterministic_walk_oracle(sys, r, budget, cfg.delta);
            CHECK(row == want);
        }
    }
}

TEST_CASE("unbiasedness against matrix-power sums (4x4, small run)") {
    auto b = make_random_ddm(4, 0.8, 21);
    auto sys = augment_and_split(b, 1.5, AugmentationMode::sign_aware);
    const index_t max_len = 6;
    // brute-force sum_{j<=L} A^j, row 0
    DenseMatrix a = csr_to_dense(sys.a);
    DenseMatrix powed = DenseMatrix::identity(4);
    DenseMatrix target = DenseMatrix::identity(4);
    for (index_t j = 1; j <= max_len; ++j) {
        DenseMatrix next(4);
        for (index_t r = 0; r < 4; ++r)
            for (index_t c = 0; c < 4; ++c) {
                double s = 0.0;
                for (index_t k = 0; k < 4; ++k) s += powed(r, k) * a(k, c);
                next(r, c) = s;
            }
        powed = next;
        for (index_t r = 0; r < 4; ++r)
            for (index_t c = 0; c < 4; ++c) target(r, c) += powed(r, c);
    }

    // delta = 0 disables weight truncation; only max_len caps the walks
    const index_t reps = 20000;
    ChainBudget one{1, max_len};
    std::vector<double> mean(4, 0.0), m2(4, 0.0);
    for (index_t rep = 0; rep < reps; ++rep) {
        auto row = estimate_row(sys, 0, one, 0.0, RngStream(rep, 0));
        std::vector<double> dense_row(4, 0.0);
        for (const auto& [c, v] : row) dense_row[c] = v;
        for (index_t c = 0; c < 4; ++c) {
            const double d = dense_row[c] - mean[c];
            mean[c] += d / static_cast<double>(rep + 1);
            m2[c] += d * (dense_row[c] - mean[c]);
        }
    }
    for (index_t c = 0; c < 4; ++c) {
        const double se =
            std::sqrt(m2[c] / static_cast<double>(reps - 1) /
                      static_cast<double>(reps));
        CHECK(std::abs(mean[c] - target(0, c)) <= 3.0 * se + 1e-12);
    }
}

TEST_CASE("retain_top_k") {
    SUBCASE("short rows unchanged") {
        SparseRow row{{0, 1.0}, {3, 0.5}};
        CHECK(retain_top_k(row, 5, 0) == row);
        CHECK(retain_top_k(row, 0, 0) == row);  // 0 = unlimited
    }
    SUBCASE("keeps largest magnitudes") {
        SparseRow row{{1, 1.0}, {3, 0.9}, {5, 0.2}, {7, 0.8}};
        auto kept = retain_top_k(row, 2, 1);
        REQUIRE(kept.size() == 2);
        CHECK(kept[0] == std::pair<index_t, double>{1, 1.0});
        CHECK(kept[1] == std::pair<index_t, double>{3, 0.9});
    }
    SUBCASE("diagonal always survives; ties break to smaller column") {
        SparseRow row{{1, 0.1}, {2, 5.0}, {4, 5.0}, {6, 5.0}};
        auto kept = retain_top_k(row, 2, 1);
        REQUIRE(kept.size() == 2);
        CHECK(kept[0] == std::pair<index_t, double>{1, 0.1});
        CHECK(kept[1] == std::pair<index_t, double>{2, 5.0});
    }
}

TEST_CASE("scale_columns") {
    SparseRow row{{0, 1.0}, {1, 1.0}};
    scale_columns(row, {2.0, 4.0});
    CHECK(row[0].second == 0.5);
    CHECK(row[1].second == 0.25);
}

TEST_CASE("compute_preconditioner: identity pipeline") {
    McConfig cfg;
    cfg.alpha = 1.0;
    auto inv = compute_preconditioner(CsrMatrix::identity(6), cfg);
    CHECK(inv.m.nnz() == 6);
    for (index_t i = 0; i < 6; ++i) CHECK(inv.m.at(i, i) == 0.5);
    CHECK(inv.budget_echo.n_chains >= 1);
    for (const auto& meta : inv.row_meta) CHECK(meta.entries_before_retention == 1);
}

TEST_CASE("compute_preconditioner approximates the dense b_hat inverse") {
    auto b = make_random_ddm(8, 0.6, 17);
    McConfig cfg;
    cfg.epsilon = 0.02;
    cfg.delta = 0.005;
    cfg.alpha = 2.0;

    auto sys = augment_and_split(b, cfg.alpha, cfg.mode);
    auto b_hat_inv = dense_inverse(csr_to_dense(sys.b_hat));
    double ref_max = 0.0;
    for (double v : b_hat_inv.values) ref_max = std::max(ref_max, std::abs(v));

    double err_sum = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        cfg.master_seed = seed;
        auto inv = compute_preconditioner(b, cfg);
        double err = 0.0;
        for (index_t i = 0; i < 8; ++i)
            for (index_t j = 0; j < 8; ++j)
                err = std::max(err, std::abs(inv.m.at(i, j) - b_hat_inv(i, j)));
        err_sum += err;
    }
    CHECK(err_sum / 10.0 < 5.0 * cfg.epsilon * ref_max);
}

TEST_CASE("determinism: serial == parallel across thread counts") {
    auto b = make_random_ddm(48, 0.15, 9);
    McConfig cfg;
    cfg.epsilon = 0.1;
    cfg.delta = 0.05;
    cfg.alpha = 1.5;
    cfg.retain_k = 8;
    cfg.master_seed = 777;

    auto serial = compute_preconditioner_serial(b, cfg);
    auto t1 = compute_preconditioner(b, cfg, 1);
    auto t8 = compute_preconditioner(b, cfg, 8);
    CHECK(serial.m == t1.m);
    CHECK(serial.m == t8.m);
}

TEST_CASE("retain_k bounds every row and keeps the diagonal") {
    auto b = make_random_ddm(32, 0.4, 2);
    McConfig cfg;
    cfg.epsilon = 0.1;
    cfg.delta = 0.01;
    cfg.alpha = 1.5;
    cfg.retain_k = 4;
    auto inv = compute_preconditioner(b, cfg);
    for (index_t i = 0; i < 32; ++i) {
        CHECK(inv.m.row_end(i) - inv.m.row_begin(i) <= 4);
        CHECK(inv.m.at(i, i) != 0.0);
    }
}

TEST_CASE("RMS error shrinks ~1/sqrt(N)") {
    auto b = make_random_ddm(16, 0.5, 4);
    const index_t n_small = 1000;
    double ratio_sum = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const double e1 = rms_error_vs_oracle(b, n_small, seed);
        const double e4 = rms_error_vs_oracle(b, 4 * n_small, seed + 1000);
        ratio_sum += e4 / e1;
    }
    const double mean_ratio = ratio_sum / 10.0;
    CHECK(mean_ratio >= 0.35);
    CHECK(mean_ratio <= 0.75);
}
