#include "mcspai/mc_engine.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mcspai {

ChainBudget derive_chain_budget(const McConfig& cfg, double a_norm) {
    if (!(a_norm >= 0.0 && a_norm < 1.0))
        throw std::invalid_argument("||A|| must lie in [0,1)");
    ChainBudget budget;
    if (cfg.chains_override) {
        budget.n_chains = *cfg.chains_override;
    } else {
        const double root = 0.6745 / (cfg.epsilon * (1.0 - a_norm));
        budget.n_chains = static_cast<index_t>(std::ceil(root * root));
    }
    if (cfg.max_len_override) {
        budget.max_len = *cfg.max_len_override;
    } else if (a_norm <= 0.0) {
        budget.max_len = 1;
    } else {
        const double len = std::log(cfg.delta) / std::log(a_norm);
        budget.max_len =
            std::max<index_t>(1, static_cast<index_t>(std::ceil(len)));
    }
    budget.n_chains = std::max<index_t>(1, budget.n_chains);
    return budget;
}

namespace {

/// Per-worker scratch: dense accumulator plus the list of touched columns.
struct RowWorkspace {
    std::vector<double> acc;
    std::vector<char> touched;
    std::vector<index_t> cols;

    explicit RowWorkspace(index_t n) : acc(n, 0.0), touched(n, 0) {}

    void deposit(index_t col, double w) {
        if (!touched[col]) {
            touched[col] = 1;
            cols.push_back(col);
        }
        acc[col] += w;
    }

    void reset() {
        for (index_t c : cols) {
            acc[c] = 0.0;
            touched[c] = 0;
        }
        cols.clear();
    }
};

/// Picks the next state from P's row of `state` by inverse-CDF walk.
/// Returns the in-row offset, or -1 when the state is absorbing.
index_t sample_transition(const CsrMatrix& p, index_t state, RngStream& rng,
                          bool& drew) {
    const index_t begin = p.row_begin(state);
    const index_t end = p.row_end(state);
    if (begin == end) return -1;
    if (end - begin == 1) return begin;  // forced move, no randomness needed
    drew = true;
    const double u = rng.next_double();
    double cum = 0.0;
    for (index_t k = begin; k < end; ++k) {
        cum += p.values[k];
        if (u < cum) return k;
    }
    return end - 1;  // rounding slop lands on the last entry
}

SparseRow estimate_row_impl(const SplitSystem& split, index_t r,
                            const ChainBudget& budget, double delta,
                            RngStream rng, RowWorkspace& ws,
                            index_t* chains_run_out = nullptr) {
    ws.reset();
    index_t chains_run = budget.n_chains;
    for (index_t chain = 0; chain < budget.n_chains; ++chain) {
        index_t state = r;
        double w = 1.0;
        bool drew = false;
        ws.deposit(r, w);
        for (index_t step = 0; step < budget.max_len; ++step) {
            const index_t k = sample_transition(split.p, state, rng, drew);
            if (k < 0) break;
            w *= split.a.values[k] / split.p.values[k];
            state = split.a.col_idx[k];
            ws.deposit(state, w);
            if (std::abs(w) < delta) break;
        }
        // A walk that consumed no randomness would repeat identically, so
        // its single realization already equals the estimator mean exactly.
        if (chain == 0 && !drew) {
            chains_run = 1;
            break;
        }
    }
    std::sort(ws.cols.begin(), ws.cols.end());
    SparseRow row;
    row.reserve(ws.cols.size());
    if (chains_run_out) *chains_run_out = chains_run;
    const double inv_n = 1.0 / static_cast<double>(chains_run);
    for (index_t c : ws.cols) row.emplace_back(c, ws.acc[c] * inv_n);
    return row;
}

}  // namespace

SparseRow estimate_row(const SplitSystem& split, index_t r,
                       const ChainBudget& budget, double delta,
                       RngStream stream) {
    RowWorkspace ws(split.a.n);
    return estimate_row_impl(split, r, budget, delta, stream, ws);
}

SparseRow retain_top_k(SparseRow row, index_t k, index_t diag_col) {
    if (k <= 0 || static_cast<index_t>(row.size()) <= k) return row;
    // Order candidates by (magnitude desc, column asc); the diagonal is
    // pinned to the front.
    std::vector<std::size_t> order(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const bool da = row[a].first == diag_col;
        const bool db = row[b].first == diag_col;
        if (da != db) return da;
        const double ma = std::abs(row[a].second);
        const double mb = std::abs(row[b].second);
        if (ma != mb) return ma > mb;
        return row[a].first < row[b].first;
    });
    order.resize(static_cast<std::size_t>(k));
    std::sort(order.begin(), order.end());
    SparseRow kept;
    kept.reserve(order.size());
    for (std::size_t i : order) kept.push_back(row[i]);
    return kept;
}

void scale_columns(SparseRow& row, const std::vector<double>& b1_diag) {
    for (auto& [col, val] : row) val /= b1_diag[col];
}

namespace {

ApproxInverse run_pipeline(const CsrMatrix& b, const McConfig& cfg,
                           int n_threads, bool parallel) {
    const CsrMatrix reduced =
        drop_small_entries(b, cfg.drop_fraction, cfg.drop_mode);
    const SplitSystem split = augment_and_split(reduced, cfg.alpha, cfg.mode);
    const ChainBudget budget = derive_chain_budget(cfg, split.a_norm);
    const index_t n = b.n;

    std::vector<SparseRow> rows(n);
    std::vector<RowMeta> meta(n);

    auto do_row = [&](index_t r, RowWorkspace& ws) {
        index_t chains_run = 0;
        SparseRow row =
            estimate_row_impl(split, r, budget, cfg.delta,
                              RngStream(cfg.master_seed, r), ws, &chains_run);
        meta[r] = {chains_run, static_cast<index_t>(row.size())};
        row = retain_top_k(std::move(row), cfg.retain_k, r);
        scale_columns(row, split.b1_diag);
        // Exact cancellations are pruned except on the diagonal, which the
        // preconditioner pattern must keep.
        std::erase_if(row, [r](const auto& e) {
            return e.second == 0.0 && e.first != r;
        });
        rows[r] = std::move(row);
    };

    if (parallel) {
#ifdef _OPENMP
        if (n_threads > 0) {
#pragma omp parallel num_threads(n_threads)
            {
                RowWorkspace ws(n);
#pragma omp for schedule(dynamic, 16)
                for (index_t r = 0; r < n; ++r) do_row(r, ws);
            }
        } else {
#pragma omp parallel
            {
                RowWorkspace ws(n);
#pragma omp for schedule(dynamic, 16)
                for (index_t r = 0; r < n; ++r) do_row(r, ws);
            }
        }
#else
        (void)n_threads;
        RowWorkspace ws(n);
        for (index_t r = 0; r < n; ++r) do_row(r, ws);
#endif
    } else {
        RowWorkspace ws(n);
        for (index_t r = 0; r < n; ++r) do_row(r, ws);
    }

    ApproxInverse out;
    out.m.n = n;
    out.m.row_ptr.assign(n + 1, 0);
    index_t total = 0;
    for (index_t r = 0; r < n; ++r) total += static_cast<index_t>(rows[r].size());
    out.m.col_idx.reserve(total);
    out.m.values.reserve(total);
    for (index_t r = 0; r < n; ++r) {
        for (const auto& [col, val] : rows[r]) {
            out.m.col_idx.push_back(col);
            out.m.values.push_back(val);
        }
        out.m.row_ptr[r + 1] = static_cast<index_t>(out.m.col_idx.size());
    }
    out.row_meta = std::move(meta);
    out.config_echo = cfg;
    out.budget_echo = budget;
    out.seed_echo = cfg.master_seed;
    return out;
}

}  // namespace

ApproxInverse compute_preconditioner(const CsrMatrix& b, const McConfig& cfg,
                                     int n_threads) {
    return run_pipeline(b, cfg, n_threads, true);
}

ApproxInverse compute_preconditioner_serial(const CsrMatrix& b,
                                            const McConfig& cfg) {
    return run_pipeline(b, cfg, 0, false);
}

}  // namespace mcspai
