#include "mcspai/split.hpp"

#include <cmath>

namespace mcspai {

namespace {

/// Copy of b with an explicit diagonal entry in every row (0 if absent).
CsrMatrix with_explicit_diagonal(const CsrMatrix& b) {
    bool complete = true;
    for (index_t i = 0; i < b.n && complete; ++i) {
        bool found = false;
        for (index_t k = b.row_begin(i); k < b.row_end(i); ++k)
            if (b.col_idx[k] == i) { found = true; break; }
        complete = found;
    }
    if (complete) return b;

    CsrMatrix out;
    out.n = b.n;
    out.row_ptr.assign(b.n + 1, 0);
    for (index_t i = 0; i < b.n; ++i) {
        bool placed = false;
        for (index_t k = b.row_begin(i); k < b.row_end(i); ++k) {
            if (!placed && b.col_idx[k] > i) {
                out.col_idx.push_back(i);
                out.values.push_back(0.0);
                placed = true;
            }
            if (b.col_idx[k] == i) placed = true;
            out.col_idx.push_back(b.col_idx[k]);
            out.values.push_back(b.values[k]);
        }
        if (!placed) {
            out.col_idx.push_back(i);
            out.values.push_back(0.0);
        }
        out.row_ptr[i + 1] = static_cast<index_t>(out.col_idx.size());
    }
    return out;
}

}  // namespace

SplitSystem augment_and_split(const CsrMatrix& b, double alpha,
                              AugmentationMode mode) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");

    const double b_norm = inf_norm(b);
    SplitSystem sys;
    sys.b_hat = with_explicit_diagonal(b);
    sys.b1_diag.resize(b.n);
    sys.s_diag.resize(b.n);

    for (index_t i = 0; i < b.n; ++i) {
        for (index_t k = sys.b_hat.row_begin(i); k < sys.b_hat.row_end(i); ++k) {
            if (sys.b_hat.col_idx[k] != i) continue;
            const double d = sys.b_hat.values[k];
            double shift = alpha * b_norm;
            if (mode == AugmentationMode::sign_aware && d < 0.0) shift = -shift;
            sys.b_hat.values[k] = d + shift;
            // S = B_hat - B: defined by the subtraction so the identity
            // b_hat_ii - b_ii == s_diag[i] holds bit-exactly.
            sys.s_diag[i] = sys.b_hat.values[k] - d;
            sys.b1_diag[i] = sys.b_hat.values[k];
            if (sys.b1_diag[i] == 0.0)
                throw SplitError("degenerate diagonal after augmentation at row " +
                                 std::to_string(i));
            break;
        }
    }

    // A = I - B1^{-1} * B_hat: zero diagonal, off-diagonal -b_ij / b_hat_ii.
    CsrMatrix& a = sys.a;
    a.n = b.n;
    a.row_ptr.assign(b.n + 1, 0);
    double a_norm = 0.0;
    for (index_t i = 0; i < b.n; ++i) {
        double row_sum = 0.0;
        for (index_t k = sys.b_hat.row_begin(i); k < sys.b_hat.row_end(i); ++k) {
            const index_t j = sys.b_hat.col_idx[k];
            if (j == i) continue;
            const double v = -sys.b_hat.values[k] / sys.b1_diag[i];
            if (v == 0.0) continue;
            a.col_idx.push_back(j);
            a.values.push_back(v);
            row_sum += std::abs(v);
        }
        a.row_ptr[i + 1] = static_cast<index_t>(a.col_idx.size());
        if (row_sum > a_norm) a_norm = row_sum;
    }
    sys.a_norm = a_norm;
    if (!(a_norm < 1.0))
        throw SplitError("diagonal dominance failure: ||A||inf = " +
                         std::to_string(a_norm));

    sys.p = transition_probabilities(a);
    return sys;
}

CsrMatrix transition_probabilities(const CsrMatrix& a) {
    CsrMatrix p;
    p.n = a.n;
    p.row_ptr.assign(a.n + 1, 0);
    for (index_t i = 0; i < a.n; ++i) {
        double row_sum = 0.0;
        for (index_t k = a.row_begin(i); k < a.row_end(i); ++k)
            row_sum += std::abs(a.values[k]);
        if (row_sum > 0.0) {
            for (index_t k = a.row_begin(i); k < a.row_end(i); ++k) {
                p.col_idx.push_back(a.col_idx[k]);
                p.values.push_back(std::abs(a.values[k]) / row_sum);
            }
        }
        p.row_ptr[i + 1] = static_cast<index_t>(p.col_idx.size());
    }
    return p;
}

}  // namespace mcspai
