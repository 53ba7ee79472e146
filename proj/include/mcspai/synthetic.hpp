#ifndef MCSPAI_SYNTHETIC_HPP
#define MCSPAI_SYNTHETIC_HPP

#include <cstdint>

#include "mcspai/csr.hpp"

namespace mcspai {

/// 1D Laplacian tridiag(-1, 2, -1).
CsrMatrix make_tridiagonal(index_t n);

/// 2D convection-diffusion operator on a grid x grid unit square
/// (5-point diffusion plus first-order upwind convection); nonsymmetric.
CsrMatrix make_convection_diffusion(index_t grid, double conv_x = 20.0,
                                    double conv_y = 10.0);

/// Linearized 2D reaction-diffusion Brusselator on a grid x grid mesh with
/// two species per point, n = 2 * grid^2. grid = 32 reproduces the shape of
/// the rdb2048 test matrix (n = 2048, nnz = 12032).
CsrMatrix make_brusselator(index_t grid, double feed = 2.0,
                           double rate = 5.45, double diffusion = 0.02);

/// Random strictly diagonally dominant matrix with ~fill fraction of
/// off-diagonal entries; deterministic in seed.
CsrMatrix make_random_ddm(index_t n, double fill, std::uint64_t seed);

/// Random dense-ish matrix with log-uniform off-diagonal magnitudes spanning
/// [lo, hi] and a dominant diagonal; used for drop-filter sweeps.
CsrMatrix make_broad_spectrum(index_t n, index_t nnz_per_row, double lo,
                              double hi, std::uint64_t seed);

}  // namespace mcspai

#endif
