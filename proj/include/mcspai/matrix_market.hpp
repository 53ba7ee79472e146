#ifndef MCSPAI_MATRIX_MARKET_HPP
#define MCSPAI_MATRIX_MARKET_HPP

#include <iosfwd>
#include <string>

#include "mcspai/csr.hpp"

namespace mcspai {

/// Parse failure; the message names the offending line.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reads a real-valued square matrix in Matrix Market coordinate or array
/// format. Symmetric/skew-symmetric storage is expanded to general storage;
/// duplicate coordinate entries are summed.
CsrMatrix parse_matrix_market(std::istream& in);
CsrMatrix read_matrix_market_file(const std::string& path);

/// Writes coordinate/general format with 17 significant digits so that a
/// parse of the output reproduces the matrix bit-exactly.
void write_matrix_market(const CsrMatrix& m, std::ostream& out);
void write_matrix_market_file(const CsrMatrix& m, const std::string& path);

}  // namespace mcspai

#endif
