#include "mcspai/synthetic.hpp"

#include <cmath>

#include "mcspai/rng.hpp"

namespace mcspai {

CsrMatrix make_tridiagonal(index_t n) {
    std::vector<index_t> rows, cols;
    std::vector<double> vals;
    for (index_t i = 0; i < n; ++i) {
        if (i > 0) {
            rows.push_back(i);
            cols.push_back(i - 1);
            vals.push_back(-1.0);
        }
        rows.push_back(i);
        cols.push_back(i);
        vals.push_back(2.0);
        if (i + 1 < n) {
            rows.push_back(i);
            cols.push_back(i + 1);
            vals.push_back(-1.0);
        }
    }
    return CsrMatrix::from_triplets(n, std::move(rows), std::move(cols),
                                    std::move(vals));
}

CsrMatrix make_convection_diffusion(index_t grid, double conv_x,
                                    double conv_y) {
    const index_t n = grid * grid;
    const double h = 1.0 / static_cast<double>(grid + 1);
    const double diff = 1.0 / (h * h);
    const double cx = conv_x / h;
    const double cy = conv_y / h;

    std::vector<index_t> rows, cols;
    std::vector<double> vals;
    auto idx = [grid](index_t ix, index_t iy) { return iy * grid + ix; };
    for (index_t iy = 0; iy < grid; ++iy) {
        for (index_t ix = 0; ix < grid; ++ix) {
            const index_t i = idx(ix, iy);
            rows.push_back(i);
            cols.push_back(i);
            vals.push_back(4.0 * diff + cx + cy);  // upwind adds to diagonal
            if (ix > 0) {
                rows.push_back(i);
                cols.push_back(idx(ix - 1, iy));
                vals.push_back(-diff - cx);
            }
            if (ix + 1 < grid) {
                rows.push_back(i);
                cols.push_back(idx(ix + 1, iy));
                vals.push_back(-diff);
            }
            if (iy > 0) {
                rows.push_back(i);
                cols.push_back(idx(ix, iy - 1));
                vals.push_back(-diff - cy);
            }
            if (iy + 1 < grid) {
                rows.push_back(i);
                cols.push_back(idx(ix, iy + 1));
                vals.push_back(-diff);
            }
        }
    }
    return CsrMatrix::from_triplets(n, std::move(rows), std::move(cols),
                                    std::move(vals));
}

CsrMatrix make_brusselator(index_t grid, double feed, double rate,
                           double diffusion) {
    // Jacobian of the 2D Brusselator at its steady state (u, v) = (A, B/A):
    //   J11 = d*Lap + (B - 1),  J12 =  A^2
    //   J21 = -B,               J22 = d*Lap - A^2
    // discretized with the 5-point stencil on a grid x grid Dirichlet mesh.
    const index_t m = grid * grid;
    const index_t n = 2 * m;
    const double h = 1.0 / static_cast<double>(grid + 1);
    const double d = diffusion / (h * h);
    const double a2 = feed * feed;

    std::vector<index_t> rows, cols;
    std::vector<double> vals;
    auto idx = [grid](index_t ix, index_t iy) { return iy * grid + ix; };
    auto stencil = [&](index_t block, double diag_react) {
        const index_t off = block * m;
        for (index_t iy = 0; iy < grid; ++iy) {
            for (index_t ix = 0; ix < grid; ++ix) {
                const index_t i = off + idx(ix, iy);
                rows.push_back(i);
                cols.push_back(i);
                vals.push_back(-4.0 * d + diag_react);
                if (ix > 0) {
                    rows.push_back(i);
                    cols.push_back(off + idx(ix - 1, iy));
                    vals.push_back(d);
                }
                if (ix + 1 < grid) {
                    rows.push_back(i);
                    cols.push_back(off + idx(ix + 1, iy));
                    vals.push_back(d);
                }
                if (iy > 0) {
                    rows.push_back(i);
                    cols.push_back(off + idx(ix, iy - 1));
                    vals.push_back(d);
                }
                if (iy + 1 < grid) {
                    rows.push_back(i);
                    cols.push_back(off + idx(ix, iy + 1));
                    vals.push_back(d);
                }
            }
        }
    };
    stencil(0, rate - 1.0);
    stencil(1, -a2);
    for (index_t k = 0; k < m; ++k) {
        rows.push_back(k);
        cols.push_back(m + k);
        vals.push_back(a2);
        rows.push_back(m + k);
        cols.push_back(k);
        vals.push_back(-rate);
    }
    return CsrMatrix::from_triplets(n, std::move(rows), std::move(cols),
                                    std::move(vals));
}

CsrMatrix make_random_ddm(index_t n, double fill, std::uint64_t seed) {
    RngStream rng(seed, 0);
    std::vector<index_t> rows, cols;
    std::vector<double> vals;
    std::vector<double> row_sum(n, 0.0);
    for (index_t i = 0; i < n; ++i) {
        for (index_t j = 0; j < n; ++j) {
            if (j == i) continue;
            if (rng.next_double() < fill) {
                const double v = 2.0 * rng.next_double() - 1.0;
                if (v == 0.0) continue;
                rows.push_back(i);
                cols.push_back(j);
                vals.push_back(v);
                row_sum[i] += std::abs(v);
            }
        }
    }
    for (index_t i = 0; i < n; ++i) {
        rows.push_back(i);
        cols.push_back(i);
        const double sign = rng.next_double() < 0.5 ? -1.0 : 1.0;
        vals.push_back(sign * (row_sum[i] + 0.5 + rng.next_double()));
    }
    return CsrMatrix::from_triplets(n, std::move(rows), std::move(cols),
                                    std::move(vals));
}

CsrMatrix make_broad_spectrum(index_t n, index_t nnz_per_row, double lo,
                              double hi, std::uint64_t seed) {
    RngStream rng(seed, 1);
    const double log_lo = std::log(lo);
    const double log_hi = std::log(hi);
    std::vector<index_t> rows, cols;
    std::vector<double> vals;
    std::vector<double> row_sum(n, 0.0);
    for (index_t i = 0; i < n; ++i) {
        for (index_t e = 0; e < nnz_per_row; ++e) {
            const auto j = static_cast<index_t>(rng.next_double() *
                                                static_cast<double>(n));
            if (j == i || j >= n) continue;
            const double mag =
                std::exp(log_lo + (log_hi - log_lo) * rng.next_double());
            const double sign = rng.next_double() < 0.5 ? -1.0 : 1.0;
            rows.push_back(i);
            cols.push_back(j);
            vals.push_back(sign * mag);
            row_sum[i] += mag;
        }
    }
    for (index_t i = 0; i < n; ++i) {
        rows.push_back(i);
        cols.push_back(i);
        vals.push_back(1.1 * row_sum[i] + hi);
    }
    return CsrMatrix::from_triplets(n, std::move(rows), std::move(cols),
                                    std::move(vals));
}

}  // namespace mcspai
