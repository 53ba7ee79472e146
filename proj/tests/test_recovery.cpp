#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mcspai/dense_solve.hpp"
#include "mcspai/recovery.hpp"
#include "mcspai/rng.hpp"
#include "mcspai/split.hpp"
#include "mcspai/synthetic.hpp"

using namespace mcspai;

namespace {

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

/// Random dense matrix with entries uniform in [-1, 1].
DenseMatrix random_dense(index_t n, std::uint64_t seed) {
    RngStream rng(seed, 3);
    DenseMatrix d(n);
    for (auto& v : d.values) v = 2.0 * rng.next_double() - 1.0;
    return d;
}

}  // namespace

TEST_CASE("zero plan is the identity operation") {
    auto m = random_dense(5, 1);
    RecoveryPlan plan{std::vector<double>(5, 0.0)};
    auto out = recover_inverse(m, plan);
    CHECK(out.values == m.values);
}

TEST_CASE("2x2 worked example") {
    // B = [[1,-2],[3,4]], alpha = 1 sign-aware: ||B|| = 7, s = [7,7]
    auto b = CsrMatrix::from_triplets(2, {0, 0, 1, 1}, {0, 1, 0, 1},
                                      {1.0, -2.0, 3.0, 4.0});
    auto sys = augment_and_split(b, 1.0, AugmentationMode::sign_aware);
    CHECK(sys.s_diag == std::vector<double>{7.0, 7.0});
    auto b_hat_inv = dense_inverse(csr_to_dense(sys.b_hat));
    auto recovered = recover_inverse(b_hat_inv, {sys.s_diag});
    auto direct = dense_inverse(csr_to_dense(b));
    CHECK(max_abs_diff(recovered, direct) < 1e-10);
}

TEST_CASE("single update matches Sherman-Morrison on hand cases") {
    for (index_t n : {2, 3}) {
        auto base = csr_to_dense(make_random_ddm(n, 1.0, 77 + n));
        std::vector<double> s(n, 0.0);
        s[0] = 1.25;  // only S_1 is nonzero
        DenseMatrix perturbed = base;  // B_hat = B + S
        perturbed(0, 0) += s[0];
        auto recovered = recover_inverse(dense_inverse(perturbed), {s});
        // (B_hat - S) * recovered ~= I
        for (index_t i = 0; i < n; ++i)
            for (index_t j = 0; j < n; ++j) {
                double acc = 0.0;
                for (index_t k = 0; k < n; ++k) acc += base(i, k) * recovered(k, j);
                CHECK(std::abs(acc - (i == j ? 1.0 : 0.0)) < 1e-12);
            }
    }
}

TEST_CASE("oracle sweep: 50 random 8x8 matrices, sign-aware alpha=4") {
    int tested = 0;
    for (std::uint64_t seed = 0; tested < 50; ++seed) {
        auto dense_b = random_dense(8, seed);
        auto b = densify_to_csr(dense_b);
        SplitSystem sys;
        try {
            sys = augment_and_split(b, 4.0, AugmentationMode::sign_aware);
        } catch (const SplitError&) {
            continue;  // not dominance-fixable at this alpha; skip
        }
        auto recovered =
            recover_inverse(dense_inverse(csr_to_dense(sys.b_hat)), {sys.s_diag});
        auto direct = dense_inverse(csr_to_dense(b));
        CHECK(max_abs_diff(recovered, direct) < 1e-9);
        ++tested;
    }
}

TEST_CASE("singular intermediate reports the row") {
    // s * m_ii = 1 makes the denominator vanish at row 1
    DenseMatrix m = DenseMatrix::identity(2);
    m(1, 1) = 0.5;
    RecoveryPlan plan{{0.0, 2.0}};
    CHECK_THROWS_WITH_AS(recover_inverse(m, plan), doctest::Contains("row 1"),
                         RecoveryError);
}

TEST_CASE("recovery on a larger sign-aware split stays exact") {
    auto b = make_random_ddm(32, 0.3, 13);
    auto sys = augment_and_split(b, 4.0, AugmentationMode::sign_aware);
    auto recovered =
        recover_inverse(dense_inverse(csr_to_dense(sys.b_hat)), {sys.s_diag});
    auto direct = dense_inverse(csr_to_dense(b));
    CHECK(max_abs_diff(recovered, direct) < 1e-9);
}
