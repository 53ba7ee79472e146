#include "mcspai/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mcspai {

namespace {

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw ParseError("matrix market: line " + std::to_string(line_no) + ": " +
                     what);
}

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

CsrMatrix parse_matrix_market(std::istream& in) {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) fail(line_no, "empty input");

    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket") fail(line_no, "missing %%MatrixMarket banner");
    object = lowercase(object);
    format = lowercase(format);
    field = lowercase(field);
    symmetry = lowercase(symmetry);
    if (object != "matrix") fail(line_no, "object must be 'matrix'");
    if (format != "coordinate" && format != "array")
        fail(line_no, "format must be 'coordinate' or 'array'");
    if (field == "complex")
        fail(line_no, "complex field is not supported");
    if (field != "real" && field != "integer" && field != "double" &&
        field != "pattern")
        fail(line_no, "unsupported field '" + field + "'");
    if (field == "pattern") fail(line_no, "pattern field is not supported");
    const bool symmetric = symmetry == "symmetric";
    const bool skew = symmetry == "skew-symmetric";
    if (!symmetric && !skew && symmetry != "general")
        fail(line_no, "unsupported symmetry '" + symmetry + "'");

    // comments
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line[0] != '%') break;
    }
    if (line.empty() || line[0] == '%') fail(line_no, "missing size line");

    std::istringstream size_line(line);
    index_t n_rows = 0, n_cols = 0;
    if (!(size_line >> n_rows >> n_cols)) fail(line_no, "malformed size line");
    if (n_rows != n_cols)
        fail(line_no, "matrix is not square (" + std::to_string(n_rows) + "x" +
                          std::to_string(n_cols) + ")");
    const index_t n = n_rows;

    std::vector<index_t> rows, cols;
    std::vector<double> vals;

    if (format == "coordinate") {
        index_t declared_nnz = 0;
        if (!(size_line >> declared_nnz)) fail(line_no, "missing nnz count");
        rows.reserve(declared_nnz);
        cols.reserve(declared_nnz);
        vals.reserve(declared_nnz);
        index_t seen = 0;
        while (seen < declared_nnz) {
            if (!std::getline(in, line)) fail(line_no + 1, "unexpected end of file");
            ++line_no;
            if (line.empty() || line[0] == '%') continue;
            std::istringstream entry(line);
            index_t i = 0, j = 0;
            double v = 0.0;
            if (!(entry >> i >> j >> v)) fail(line_no, "malformed entry");
            if (i < 1 || i > n || j < 1 || j > n)
                fail(line_no, "index out of range");
            rows.push_back(i - 1);
            cols.push_back(j - 1);
            vals.push_back(v);
            if ((symmetric || skew) && i != j) {
                rows.push_back(j - 1);
                cols.push_back(i - 1);
                vals.push_back(skew ? -v : v);
            }
            ++seen;
        }
    } else {  // array: column-major dense listing
        const index_t total = symmetric || skew
                                  ? n * (n + 1) / 2
                                  : n * n;
        index_t seen = 0;
        index_t col = 0;
        index_t row = (symmetric || skew) ? 0 : 0;
        index_t row_in_col = symmetric || skew ? 0 : 0;
        (void)row;
        while (seen < total) {
            if (!std::getline(in, line)) fail(line_no + 1, "unexpected end of file");
            ++line_no;
            if (line.empty() || line[0] == '%') continue;
            std::istringstream entry(line);
            double v;
            while (entry >> v) {
                index_t i, j;
                if (symmetric || skew) {
                    j = col;
                    i = col + row_in_col;
                } else {
                    j = col;
                    i = row_in_col;
                }
                if (v != 0.0) {
                    rows.push_back(i);
                    cols.push_back(j);
                    vals.push_back(v);
                    if ((symmetric || skew) && i != j) {
                        rows.push_back(j);
                        cols.push_back(i);
                        vals.push_back(skew ? -v : v);
                    }
                }
                ++seen;
                ++row_in_col;
                const index_t col_len = (symmetric || skew) ? n - col : n;
                if (row_in_col == col_len) {
                    row_in_col = 0;
                    ++col;
                }
                if (seen == total) break;
            }
        }
    }

    return CsrMatrix::from_triplets(n, std::move(rows), std::move(cols),
                                    std::move(vals));
}

CsrMatrix read_matrix_market_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_matrix_market(in);
}

void write_matrix_market(const CsrMatrix& m, std::ostream& out) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.n << " " << m.n << " " << m.nnz() << "\n";
    char buf[64];
    for (index_t i = 0; i < m.n; ++i) {
        for (index_t k = m.row_begin(i); k < m.row_end(i); ++k) {
            std::snprintf(buf, sizeof(buf), "%lld %lld %.17g\n",
                          static_cast<long long>(i + 1),
                          static_cast<long long>(m.col_idx[k] + 1),
                          m.values[k]);
            out << buf;
        }
    }
    if (!out) throw std::runtime_error("matrix market: write failure");
}

void write_matrix_market_file(const CsrMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_matrix_market(m, out);
    out.close();
    if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

}  // namespace mcspai
