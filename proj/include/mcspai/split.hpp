#ifndef MCSPAI_SPLIT_HPP
#define MCSPAI_SPLIT_HPP

#include "mcspai/csr.hpp"

namespace mcspai {

/// How the diagonal is augmented to force diagonal dominance.
enum class AugmentationMode {
    plain,      // b_hat_ii = b_ii + alpha * ||B||
    sign_aware  // b_hat_ii = b_ii + alpha * ||B|| * sgn(b_ii), sgn(0) := +1
};

struct SplitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Products of the splitting phase. A = I - B1^{-1} * B_hat has zero
/// diagonal and ||A||inf < 1; P carries the walk transition probabilities
/// on the same sparsity pattern as A; s_diag = diag(B_hat - B).
struct SplitSystem {
    CsrMatrix b_hat;
    std::vector<double> b1_diag;  // diag(B_hat), all nonzero
    CsrMatrix a;
    CsrMatrix p;
    std::vector<double> s_diag;
    double a_norm = 0.0;
};

/// Augments the diagonal by alpha * ||B||inf (optionally sign-aware) and
/// derives the Neumann-series machinery. Structurally missing diagonal
/// entries are materialized first. Throws SplitError when an augmented
/// diagonal lands on zero or when ||A||inf >= 1.
SplitSystem augment_and_split(const CsrMatrix& b, double alpha,
                              AugmentationMode mode = AugmentationMode::sign_aware);

/// Magnitude-proportional (MAO) probabilities: p_ij = |a_ij| / sum_k |a_ik|.
/// Rows of a without nonzeros become empty rows (absorbing states).
CsrMatrix transition_probabilities(const CsrMatrix& a);

}  // namespace mcspai

#endif
