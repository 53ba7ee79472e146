#ifndef MCSPAI_CSR_HPP
#define MCSPAI_CSR_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mcspai {

using index_t = std::int64_t;

/// Square sparse matrix in CSR format with owned storage.
/// Invariants: row_ptr nondecreasing, row_ptr[0] = 0, row_ptr[n] = nnz;
/// column indices strictly increasing within each row; no stored zeros
/// after construction through from_triplets().
struct CsrMatrix {
    index_t n = 0;
    std::vector<index_t> row_ptr;  // length n+1
    std::vector<index_t> col_idx;
    std::vector<double> values;

    index_t nnz() const { return static_cast<index_t>(values.size()); }

    index_t row_begin(index_t i) const { return row_ptr[i]; }
    index_t row_end(index_t i) const { return row_ptr[i + 1]; }

    /// Value at (i,j), 0 if not stored. Binary search within the row.
    double at(index_t i, index_t j) const;

    /// Builds a CSR matrix from coordinate triplets. Duplicates are summed,
    /// entries that sum to exactly zero are pruned, columns sorted per row.
    static CsrMatrix from_triplets(index_t n,
                                   std::vector<index_t> rows,
                                   std::vector<index_t> cols,
                                   std::vector<double> vals);

    static CsrMatrix identity(index_t n);

    bool operator==(const CsrMatrix&) const = default;
};

/// Dense row-major square matrix, used by the recovery phase and as the
/// carrier for the direct-inversion oracle.
struct DenseMatrix {
    index_t n = 0;
    std::vector<double> values;  // length n*n

    DenseMatrix() = default;
    explicit DenseMatrix(index_t dim) : n(dim), values(dim * dim, 0.0) {}

    double& operator()(index_t i, index_t j) { return values[i * n + j]; }
    double operator()(index_t i, index_t j) const { return values[i * n + j]; }

    static DenseMatrix identity(index_t n);
};

/// Magnitude range of the off-diagonal nonzeros of a matrix.
struct ValueRange {
    double min_abs = 0.0;
    double max_abs = 0.0;
};

enum class DropMode {
    value_range,    // threshold = min_abs + p * (max_abs - min_abs)
    count_quantile  // remove the floor(p * count) smallest entries
};

/// max_i sum_j |m_ij|
double inf_norm(const CsrMatrix& m);

/// Range over off-diagonal nonzeros; {0,0} when there are none.
ValueRange off_diagonal_range(const CsrMatrix& m);

/// Removes small off-diagonal entries; the diagonal is never touched and
/// surviving values are unchanged. p = 0 returns m unchanged.
CsrMatrix drop_small_entries(const CsrMatrix& m, double p,
                             DropMode mode = DropMode::value_range);

/// y = m * x
std::vector<double> spmv(const CsrMatrix& m, const std::vector<double>& x);

CsrMatrix densify_to_csr(const DenseMatrix& d, double prune_tol = 0.0);
DenseMatrix csr_to_dense(const CsrMatrix& m);

}  // namespace mcspai

#endif
