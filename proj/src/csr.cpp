#include "mcspai/csr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mcspai {

double CsrMatrix::at(index_t i, index_t j) const {
    auto first = col_idx.begin() + row_ptr[i];
    auto last = col_idx.begin() + row_ptr[i + 1];
    auto it = std::lower_bound(first, last, j);
    if (it != last && *it == j) return values[it - col_idx.begin()];
    return 0.0;
}

CsrMatrix CsrMatrix::from_triplets(index_t n, std::vector<index_t> rows,
                                   std::vector<index_t> cols,
                                   std::vector<double> vals) {
    if (rows.size() != cols.size() || rows.size() != vals.size())
        throw std::invalid_argument("triplet arrays must have equal length");
    const std::size_t m = rows.size();
    for (std::size_t k = 0; k < m; ++k) {
        if (rows[k] < 0 || rows[k] >= n || cols[k] < 0 || cols[k] >= n)
            throw std::out_of_range("triplet index out of range");
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (rows[a] != rows[b]) return rows[a] < rows[b];
        return cols[a] < cols[b];
    });

    CsrMatrix out;
    out.n = n;
    out.row_ptr.assign(n + 1, 0);
    out.col_idx.reserve(m);
    out.values.reserve(m);

    std::size_t k = 0;
    for (index_t i = 0; i < n; ++i) {
        while (k < m && rows[order[k]] == i) {
            const index_t c = cols[order[k]];
            double v = vals[order[k]];
            ++k;
            while (k < m && rows[order[k]] == i && cols[order[k]] == c) {
                v += vals[order[k]];  // duplicates are summed
                ++k;
            }
            if (v != 0.0) {
                out.col_idx.push_back(c);
                out.values.push_back(v);
            }
        }
        out.row_ptr[i + 1] = static_cast<index_t>(out.col_idx.size());
    }
    return out;
}

CsrMatrix CsrMatrix::identity(index_t n) {
    CsrMatrix out;
    out.n = n;
    out.row_ptr.resize(n + 1);
    out.col_idx.resize(n);
    out.values.assign(n, 1.0);
    for (index_t i = 0; i <= n; ++i) out.row_ptr[i] = i;
    std::iota(out.col_idx.begin(), out.col_idx.end(), index_t{0});
    return out;
}

DenseMatrix DenseMatrix::identity(index_t n) {
    DenseMatrix out(n);
    for (index_t i = 0; i < n; ++i) out(i, i) = 1.0;
    return out;
}

double inf_norm(const CsrMatrix& m) {
    double best = 0.0;
    for (index_t i = 0; i < m.n; ++i) {
        double s = 0.0;
        for (index_t k = m.row_begin(i); k < m.row_end(i); ++k)
            s += std::abs(m.values[k]);
        best = std::max(best, s);
    }
    return best;
}

ValueRange off_diagonal_range(const CsrMatrix& m) {
    ValueRange r{0.0, 0.0};
    bool seen = false;
    for (index_t i = 0; i < m.n; ++i) {
        for (index_t k = m.row_begin(i); k < m.row_end(i); ++k) {
            if (m.col_idx[k] == i) continue;
            const double a = std::abs(m.values[k]);
            if (!seen) {
                r.min_abs = r.max_abs = a;
                seen = true;
            } else {
                r.min_abs = std::min(r.min_abs, a);
                r.max_abs = std::max(r.max_abs, a);
            }
        }
    }
    return r;
}

namespace {

CsrMatrix filter_entries(const CsrMatrix& m, const std::vector<char>& keep) {
    CsrMatrix out;
    out.n = m.n;
    out.row_ptr.assign(m.n + 1, 0);
    for (index_t i = 0; i < m.n; ++i) {
        for (index_t k = m.row_begin(i); k < m.row_end(i); ++k) {
            if (keep[k]) {
                out.col_idx.push_back(m.col_idx[k]);
                out.values.push_back(m.values[k]);
            }
        }
        out.row_ptr[i + 1] = static_cast<index_t>(out.col_idx.size());
    }
    return out;
}

}  // namespace

CsrMatrix drop_small_entries(const CsrMatrix& m, double p, DropMode mode) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("drop fraction must lie in [0,1]");
    if (p == 0.0) return m;

    std::vector<char> keep(m.nnz(), 1);
    if (mode == DropMode::value_range) {
        const ValueRange r = off_diagonal_range(m);
        if (r.max_abs == 0.0) return m;
        const double threshold = r.min_abs + p * (r.max_abs - r.min_abs);
        for (index_t i = 0; i < m.n; ++i)
            for (index_t k = m.row_begin(i); k < m.row_end(i); ++k)
                if (m.col_idx[k] != i && std::abs(m.values[k]) < threshold)
                    keep[k] = 0;
    } else {
        // count-quantile mode: remove the floor(p * count) off-diagonal
        // entries of smallest magnitude; ties resolved by position.
        std::vector<index_t> off;
        for (index_t i = 0; i < m.n; ++i)
            for (index_t k = m.row_begin(i); k < m.row_end(i); ++k)
                if (m.col_idx[k] != i) off.push_back(k);
        const auto n_drop =
            static_cast<std::size_t>(p * static_cast<double>(off.size()));
        std::stable_sort(off.begin(), off.end(), [&](index_t a, index_t b) {
            return std::abs(m.values[a]) < std::abs(m.values[b]);
        });
        for (std::size_t t = 0; t < n_drop && t < off.size(); ++t)
            keep[off[t]] = 0;
    }
    return filter_entries(m, keep);
}

std::vector<double> spmv(const CsrMatrix& m, const std::vector<double>& x) {
    if (static_cast<index_t>(x.size()) != m.n)
        throw std::invalid_argument("spmv: dimension mismatch");
    std::vector<double> y(m.n);
    for (index_t i = 0; i < m.n; ++i) {
        double s = 0.0;
        for (index_t k = m.row_begin(i); k < m.row_end(i); ++k)
            s += m.values[k] * x[m.col_idx[k]];
        y[i] = s;
    }
    return y;
}

CsrMatrix densify_to_csr(const DenseMatrix& d, double prune_tol) {
    std::vector<index_t> rows, cols;
    std::vector<double> vals;
    for (index_t i = 0; i < d.n; ++i)
        for (index_t j = 0; j < d.n; ++j)
            if (std::abs(d(i, j)) > prune_tol) {
                rows.push_back(i);
                cols.push_back(j);
                vals.push_back(d(i, j));
            }
    return CsrMatrix::from_triplets(d.n, std::move(rows), std::move(cols),
                                    std::move(vals));
}

DenseMatrix csr_to_dense(const CsrMatrix& m) {
    DenseMatrix d(m.n);
    for (index_t i = 0; i < m.n; ++i)
        for (index_t k = m.row_begin(i); k < m.row_end(i); ++k)
            d(i, m.col_idx[k]) = m.values[k];
    return d;
}

}  // namespace mcspai
