#include "mcspai/recovery.hpp"

#include <cmath>

namespace mcspai {

DenseMatrix recover_inverse(const DenseMatrix& b_hat_inv,
                            const RecoveryPlan& plan, double tol) {
    const index_t n = b_hat_inv.n;
    if (static_cast<index_t>(plan.s_diag.size()) != n)
        throw std::invalid_argument("recovery plan length mismatch");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

    DenseMatrix m = b_hat_inv;
    std::vector<double> col(n), row(n);
    for (index_t i = n; i-- > 0;) {
        const double s = plan.s_diag[i];
        if (s == 0.0) continue;
        const double denom = 1.0 - s * m(i, i);
        if (std::abs(denom) <= tol)
            throw RecoveryError("singular update at row " + std::to_string(i));
        // Snapshot col/row i before the in-place rank-one update.
        for (index_t r = 0; r < n; ++r) col[r] = m(r, i);
        for (index_t c = 0; c < n; ++c) row[c] = m(i, c);
        const double f = s / denom;
        for (index_t r = 0; r < n; ++r) {
            const double cf = f * col[r];
            if (cf == 0.0) continue;
            double* mr = &m.values[r * n];
            for (index_t c = 0; c < n; ++c) mr[c] += cf * row[c];
        }
    }
    return m;
}

}  // namespace mcspai
