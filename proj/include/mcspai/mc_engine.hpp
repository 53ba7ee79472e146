#ifndef MCSPAI_MC_ENGINE_HPP
#define MCSPAI_MC_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mcspai/rng.hpp"
#include "mcspai/split.hpp"

namespace mcspai {

/// User-facing method parameters.
struct McConfig {
    double epsilon = 0.0625;   // target stochastic-error scale
    double delta = 0.0625;     // weight-truncation threshold
    double alpha = 5.0;
    AugmentationMode mode = AugmentationMode::sign_aware;
    double drop_fraction = 0.0;
    DropMode drop_mode = DropMode::value_range;
    index_t retain_k = 0;      // 0 = unlimited
    std::optional<index_t> chains_override;
    std::optional<index_t> max_len_override;
    std::uint64_t master_seed = 0;
};

struct ChainBudget {
    index_t n_chains = 1;
    index_t max_len = 1;
};

struct RowMeta {
    index_t chains_used = 0;
    index_t entries_before_retention = 0;
};

/// Row-sparse approximate inverse M ~= B_hat^{-1}.
struct ApproxInverse {
    CsrMatrix m;
    std::vector<RowMeta> row_meta;
    McConfig config_echo;
    ChainBudget budget_echo;
    std::uint64_t seed_echo = 0;
};

/// One accumulated row, column-sorted, before/after retention.
using SparseRow = std::vector<std::pair<index_t, double>>;

/// Maps (epsilon, delta) to a chain budget:
///   n_chains = ceil((0.6745 / (epsilon * (1 - ||A||)))^2)
///   max_len  = ceil(ln delta / ln ||A||), at least 1.
/// Overrides take precedence. Requires 0 < a_norm < 1 (a_norm == 0 is
/// accepted and forces max_len = 1).
ChainBudget derive_chain_budget(const McConfig& cfg, double a_norm);

/// Simulates budget.n_chains walks from state r and accumulates Eq-style
/// weight deposits: W_0 = 1 lands on (r,r); a step from s to t multiplies
/// W by a_st / p_st and deposits the new W on (r,t). A walk ends when
/// |W| < delta (after the deposit), when the current state has no
/// transitions, or after max_len steps. The accumulator is divided by
/// n_chains; the result estimates row r of (I - A)^{-1}.
SparseRow estimate_row(const SplitSystem& split, index_t r,
                       const ChainBudget& budget, double delta,
                       RngStream stream);

/// Keeps the k entries of largest magnitude; the diagonal entry (column
/// diag_col) always survives and counts within k. Ties go to the smaller
/// column index. k = 0 means unlimited.
SparseRow retain_top_k(SparseRow row, index_t k, index_t diag_col);

/// Divides entry (r, c) by b1_diag[c], turning rows of (I-A)^{-1} into
/// rows of B_hat^{-1}.
void scale_columns(SparseRow& row, const std::vector<double>& b1_diag);

/// Full pipeline: drop -> augment/split -> budget -> per-row estimate,
/// retain, scale -> assemble. Deterministic function of (b, cfg): each row
/// draws from the stream (master_seed, row), so the result is bit-identical
/// for any thread count. n_threads = 0 uses the OpenMP default.
ApproxInverse compute_preconditioner(const CsrMatrix& b, const McConfig& cfg,
                                     int n_threads = 0);

/// Serial reference implementation of compute_preconditioner; same contract,
/// no OpenMP. Kept as the oracle for the parallel path.
ApproxInverse compute_preconditioner_serial(const CsrMatrix& b,
                                            const McConfig& cfg);

}  // namespace mcspai

#endif
