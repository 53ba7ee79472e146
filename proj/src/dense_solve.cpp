#include "mcspai/dense_solve.hpp"

#include <cmath>
#include <utility>

namespace mcspai {

DenseMatrix dense_inverse(const DenseMatrix& m, double pivot_tol) {
    const index_t n = m.n;
    DenseMatrix a = m;
    DenseMatrix inv = DenseMatrix::identity(n);

    for (index_t col = 0; col < n; ++col) {
        index_t pivot = col;
        for (index_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (std::abs(a(pivot, col)) <= pivot_tol)
            throw SingularMatrixError("singular to tolerance at column " +
                                      std::to_string(col));
        if (pivot != col) {
            for (index_t j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        }
        const double d = a(col, col);
        for (index_t j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (index_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a(r, col);
            if (f == 0.0) continue;
            for (index_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

std::vector<double> dense_solve(const DenseMatrix& m, std::vector<double> b,
                                double pivot_tol) {
    const index_t n = m.n;
    DenseMatrix a = m;
    for (index_t col = 0; col < n; ++col) {
        index_t pivot = col;
        for (index_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (std::abs(a(pivot, col)) <= pivot_tol)
            throw SingularMatrixError("singular to tolerance at column " +
                                      std::to_string(col));
        if (pivot != col) {
            for (index_t j = col; j < n; ++j) std::swap(a(pivot, j), a(col, j));
            std::swap(b[pivot], b[col]);
        }
        for (index_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            for (index_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
            b[r] -= f * b[col];
        }
    }
    for (index_t i = n; i-- > 0;) {
        double s = b[i];
        for (index_t j = i + 1; j < n; ++j) s -= a(i, j) * b[j];
        b[i] = s / a(i, i);
    }
    return b;
}

}  // namespace mcspai
