// mcspai: compute Monte Carlo sparse approximate inverse preconditioners
// and test them with the built-in Krylov solvers.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "mcspai/dense_solve.hpp"
#include "mcspai/matrix_market.hpp"
#include "mcspai/mc_engine.hpp"
#include "mcspai/metadata.hpp"
#include "mcspai/recovery.hpp"
#include "mcspai/solvers.hpp"
#include "mcspai/synthetic.hpp"

namespace fs = std::filesystem;
using namespace mcspai;

namespace {

using clock_type = std::chrono::steady_clock;

double elapsed_ms(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0)
        .count();
}

constexpr const char* kCsvHeader =
    "matrix,n,nnz,method,epsilon,delta,alpha,drop_fraction,retain_k,seed,"
    "precond_wall_ms,solver,iterations,converged,final_rel_residual,"
    "solve_wall_ms,total_wall_ms";

struct CsvRow {
    std::string matrix;
    index_t n = 0;
    index_t nnz = 0;
    std::string method;  // "none" | "P" | "P-error"
    double epsilon = 0.0;
    double delta = 0.0;
    double alpha = 0.0;
    double drop_fraction = 0.0;
    index_t retain_k = 0;
    std::uint64_t seed = 0;
    double precond_wall_ms = 0.0;
    std::string solver;
    index_t iterations = 0;
    bool converged = false;
    double final_rel_residual = 0.0;
    double solve_wall_ms = 0.0;
    double total_wall_ms = 0.0;

    std::string line() const {
        std::ostringstream out;
        out.precision(17);
        out << matrix << ',' << n << ',' << nnz << ',' << method << ','
            << epsilon << ',' << delta << ',' << alpha << ',' << drop_fraction
            << ',' << retain_k << ',' << seed << ',' << precond_wall_ms << ','
            << solver << ',' << iterations << ',' << (converged ? 1 : 0) << ','
            << final_rel_residual << ',' << solve_wall_ms << ','
            << total_wall_ms;
        return out.str();
    }

    /// Resumption key: one row per (matrix, parameters, seed, solver).
    std::string key() const {
        std::ostringstream out;
        out.precision(17);
        out << matrix << '|' << epsilon << '|' << delta << '|' << alpha << '|'
            << drop_fraction << '|' << retain_k << '|' << seed << '|' << solver
            << '|' << (method == "none" ? "none" : "P");
        return out.str();
    }
};

void append_csv_row(const std::string& path, const CsvRow& row) {
    const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    if (fresh) out << kCsvHeader << "\n";
    out << row.line() << "\n";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    return fields;
}

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("MCSPAI_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 0;  // OpenMP default
}

AugmentationMode parse_mode(const std::string& s) {
    if (s == "sign") return AugmentationMode::sign_aware;
    if (s == "plain") return AugmentationMode::plain;
    throw CLI::ValidationError("--mode must be 'sign' or 'plain'");
}

DropMode parse_drop_mode(const std::string& s) {
    if (s == "range") return DropMode::value_range;
    if (s == "count") return DropMode::count_quantile;
    throw CLI::ValidationError("--drop-mode must be 'range' or 'count'");
}

std::string mode_name(AugmentationMode m) {
    return m == AugmentationMode::sign_aware ? "sign" : "plain";
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Metadata preconditioner_metadata(const std::string& matrix_path,
                                 const CsrMatrix& b, const ApproxInverse& inv,
                                 const McConfig& cfg, index_t nnz_dropped,
                                 double wall_ms) {
    Metadata meta;
    meta["matrix"] = matrix_path;
    meta["n"] = std::to_string(b.n);
    meta["nnz"] = std::to_string(b.nnz());
    meta["nnz_after_drop"] = std::to_string(nnz_dropped);
    meta["nnz_m"] = std::to_string(inv.m.nnz());
    meta["seed"] = std::to_string(cfg.master_seed);
    meta["epsilon"] = format_double(cfg.epsilon);
    meta["delta"] = format_double(cfg.delta);
    meta["alpha"] = format_double(cfg.alpha);
    meta["mode"] = mode_name(cfg.mode);
    meta["drop_fraction"] = format_double(cfg.drop_fraction);
    meta["drop_mode"] =
        cfg.drop_mode == DropMode::value_range ? "range" : "count";
    meta["retain_k"] = std::to_string(cfg.retain_k);
    meta["n_chains"] = std::to_string(inv.budget_echo.n_chains);
    meta["max_len"] = std::to_string(inv.budget_echo.max_len);
    meta["wall_ms"] = format_double(wall_ms);
    return meta;
}

std::vector<double> load_rhs(const std::string& rhs_spec, const CsrMatrix& b) {
    if (rhs_spec.empty() || rhs_spec == "ones-product")
        return ones_product_rhs(b);
    std::ifstream in(rhs_spec);
    if (!in) throw std::runtime_error("cannot open rhs file '" + rhs_spec + "'");
    std::vector<double> rhs;
    double v;
    while (in >> v) rhs.push_back(v);
    if (static_cast<index_t>(rhs.size()) != b.n)
        throw std::runtime_error("rhs length " + std::to_string(rhs.size()) +
                                 " does not match matrix dimension " +
                                 std::to_string(b.n));
    return rhs;
}

// ---------------------------------------------------------------- precondition

struct PrecondArgs {
    std::string matrix_path;
    std::string out_dir = ".";
    McConfig cfg;
    std::string mode = "sign";
    std::string drop_mode = "range";
    int reps = 1;
    int threads = 0;
    long long chains_override = 0;
    long long max_len_override = 0;
};

int run_precondition(const PrecondArgs& args) {
    McConfig cfg = args.cfg;
    cfg.mode = parse_mode(args.mode);
    cfg.drop_mode = parse_drop_mode(args.drop_mode);
    if (args.chains_override > 0) cfg.chains_override = args.chains_override;
    if (args.max_len_override > 0) cfg.max_len_override = args.max_len_override;

    const CsrMatrix b = read_matrix_market_file(args.matrix_path);
    fs::create_directories(args.out_dir);
    const std::string stem = fs::path(args.matrix_path).stem().string();
    const std::string csv_path =
        (fs::path(args.out_dir) / "results.csv").string();
    const int threads = resolve_threads(args.threads);

    for (int rep = 0; rep < args.reps; ++rep) {
        McConfig rep_cfg = cfg;
        rep_cfg.master_seed = cfg.master_seed + static_cast<std::uint64_t>(rep);

        const auto t0 = clock_type::now();
        const ApproxInverse inv = compute_preconditioner(b, rep_cfg, threads);
        const double wall = elapsed_ms(t0);

        const CsrMatrix dropped =
            drop_small_entries(b, rep_cfg.drop_fraction, rep_cfg.drop_mode);
        const std::string base =
            stem + "_seed" + std::to_string(rep_cfg.master_seed);
        const std::string m_path =
            (fs::path(args.out_dir) / (base + ".mtx")).string();
        write_matrix_market_file(inv.m, m_path);
        write_metadata_file(
            preconditioner_metadata(args.matrix_path, b, inv, rep_cfg,
                                    dropped.nnz(), wall),
            m_path + ".meta");

        CsvRow row;
        row.matrix = stem;
        row.n = b.n;
        row.nnz = b.nnz();
        row.method = "P";
        row.epsilon = rep_cfg.epsilon;
        row.delta = rep_cfg.delta;
        row.alpha = rep_cfg.alpha;
        row.drop_fraction = rep_cfg.drop_fraction;
        row.retain_k = rep_cfg.retain_k;
        row.seed = rep_cfg.master_seed;
        row.precond_wall_ms = wall;
        row.total_wall_ms = wall;
        append_csv_row(csv_path, row);

        std::cout << "precondition: wrote " << m_path << " ("
                  << inv.m.nnz() << " nnz) in " << wall << " ms\n";
    }
    return 0;
}

// ---------------------------------------------------------------------- solve

struct SolveArgs {
    std::string matrix_path;
    std::string precond_path;
    std::string solver = "gmres";
    std::string rhs = "ones-product";
    std::string csv_path = "results.csv";
    SolverConfig cfg;
};

int run_solve(const SolveArgs& args) {
    const CsrMatrix b = read_matrix_market_file(args.matrix_path);
    SolverConfig cfg = args.cfg;
    if (args.solver == "gmres") {
        cfg.method = SolverMethod::gmres;
    } else if (args.solver == "bicgstab") {
        cfg.method = SolverMethod::bicgstab;
    } else {
        throw CLI::ValidationError("--solver must be 'gmres' or 'bicgstab'");
    }

    std::optional<CsrMatrix> precond;
    Metadata precond_meta;
    if (!args.precond_path.empty()) {
        precond = read_matrix_market_file(args.precond_path);
        if (precond->n != b.n)
            throw std::runtime_error(
                "dimension mismatch: matrix n=" + std::to_string(b.n) +
                ", preconditioner n=" + std::to_string(precond->n));
        const std::string meta_path = args.precond_path + ".meta";
        if (fs::exists(meta_path)) precond_meta = read_metadata_file(meta_path);
    }

    const std::vector<double> rhs = load_rhs(args.rhs, b);
    const auto t0 = clock_type::now();
    const SolveReport rep =
        solve(b, rhs, precond ? &*precond : nullptr, cfg);
    const double total = elapsed_ms(t0);

    CsvRow row;
    row.matrix = fs::path(args.matrix_path).stem().string();
    row.n = b.n;
    row.nnz = b.nnz();
    row.method = precond ? "P" : "none";
    auto meta_double = [&](const char* key) {
        auto it = precond_meta.find(key);
        return it == precond_meta.end() ? 0.0 : std::stod(it->second);
    };
    row.epsilon = meta_double("epsilon");
    row.delta = meta_double("delta");
    row.alpha = meta_double("alpha");
    row.drop_fraction = meta_double("drop_fraction");
    row.retain_k = static_cast<index_t>(meta_double("retain_k"));
    row.seed = static_cast<std::uint64_t>(meta_double("seed"));
    row.precond_wall_ms = meta_double("wall_ms");
    row.solver = args.solver;
    row.iterations = rep.iterations;
    row.converged = rep.converged;
    row.final_rel_residual = rep.final_rel_residual;
    row.solve_wall_ms = rep.wall_ms;
    row.total_wall_ms = row.precond_wall_ms + total;
    append_csv_row(args.csv_path, row);

    std::cout << "solve: " << args.solver << (precond ? " [P]" : " [none]")
              << " " << (rep.converged ? "converged" : "did NOT converge")
              << " in " << rep.iterations << " iterations, true residual "
              << rep.final_rel_residual << "\n";
    std::cout << "solve time: " << rep.wall_ms << " ms (total " << total
              << " ms)\n";
    return 0;
}

// ---------------------------------------------------------------------- bench

struct BenchSpec {
    std::string matrix;
    std::vector<double> epsilons;
    std::vector<double> drop_fractions;
    std::vector<index_t> retain_ks;
    double delta = 0.0625;
    double alpha = 5.0;
    std::string mode = "sign";
    std::string drop_mode = "range";
    std::uint64_t seed = 0;
    int reps = 10;
    std::string solver = "gmres";
    double tol = 1e-6;
    index_t max_iters = 30000;
    index_t restart = 50;
};

BenchSpec parse_bench_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spec '" + path + "'");
    BenchSpec spec;
    std::string line;
    std::size_t line_no = 0;
    auto to_list = [](const std::string& s) {
        std::vector<std::string> items;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item.erase(0, item.find_first_not_of(" \t"));
            item.erase(item.find_last_not_of(" \t") + 1);
            if (!item.empty()) items.push_back(item);
        }
        return items;
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("spec line " + std::to_string(line_no) +
                                     ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        value.erase(0, value.find_first_not_of(" \t"));
        value.erase(value.find_last_not_of(" \t") + 1);

        if (key == "matrix") spec.matrix = value;
        else if (key == "epsilons")
            for (const auto& s : to_list(value))
                spec.epsilons.push_back(std::stod(s));
        else if (key == "drop_fractions")
            for (const auto& s : to_list(value))
                spec.drop_fractions.push_back(std::stod(s));
        else if (key == "retain_ks")
            for (const auto& s : to_list(value))
                spec.retain_ks.push_back(std::stoll(s));
        else if (key == "delta") spec.delta = std::stod(value);
        else if (key == "alpha") spec.alpha = std::stod(value);
        else if (key == "mode") spec.mode = value;
        else if (key == "drop_mode") spec.drop_mode = value;
        else if (key == "seed") spec.seed = std::stoull(value);
        else if (key == "reps") spec.reps = std::stoi(value);
        else if (key == "solver") spec.solver = value;
        else if (key == "tol") spec.tol = std::stod(value);
        else if (key == "max_iters") spec.max_iters = std::stoll(value);
        else if (key == "restart") spec.restart = std::stoll(value);
        else
            throw std::runtime_error("spec line " + std::to_string(line_no) +
                                     ": unknown key '" + key + "'");
    }
    if (spec.matrix.empty())
        throw std::runtime_error("spec: 'matrix' is required");
    if (spec.epsilons.empty() || spec.drop_fractions.empty() ||
        spec.retain_ks.empty())
        throw std::runtime_error(
            "spec: epsilons, drop_fractions and retain_ks must be non-empty");
    if (spec.reps < 1) throw std::runtime_error("spec: reps must be >= 1");
    return spec;
}

int run_bench(const std::string& spec_path, const std::string& out_path,
              int threads) {
    const BenchSpec spec = parse_bench_spec(spec_path);
    const CsrMatrix b = read_matrix_market_file(spec.matrix);
    const std::string stem = fs::path(spec.matrix).stem().string();
    const int n_threads = resolve_threads(threads);

    // load already-completed cells for resumption
    std::map<std::string, CsvRow> rows;
    if (fs::exists(out_path)) {
        std::ifstream in(out_path);
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto f = split_csv_line(line);
            if (f.size() < 17) continue;
            CsvRow row;
            row.matrix = f[0];
            row.n = std::stoll(f[1]);
            row.nnz = std::stoll(f[2]);
            row.method = f[3];
            row.epsilon = std::stod(f[4]);
            row.delta = std::stod(f[5]);
            row.alpha = std::stod(f[6]);
            row.drop_fraction = std::stod(f[7]);
            row.retain_k = std::stoll(f[8]);
            row.seed = std::stoull(f[9]);
            row.precond_wall_ms = std::stod(f[10]);
            row.solver = f[11];
            row.iterations = std::stoll(f[12]);
            row.converged = f[13] == "1";
            row.final_rel_residual = std::stod(f[14]);
            row.solve_wall_ms = std::stod(f[15]);
            row.total_wall_ms = std::stod(f[16]);
            rows[row.key()] = row;
        }
    }

    SolverConfig scfg;
    scfg.method = spec.solver == "bicgstab" ? SolverMethod::bicgstab
                                            : SolverMethod::gmres;
    scfg.rel_tol = spec.tol;
    scfg.max_iters = spec.max_iters;
    scfg.restart = spec.restart;
    const std::vector<double> rhs = ones_product_rhs(b);

    bool all_completed = true;
    for (double drop : spec.drop_fractions) {
        for (double eps : spec.epsilons) {
            for (index_t k : spec.retain_ks) {
                for (int rep = 0; rep < spec.reps; ++rep) {
                    McConfig cfg;
                    cfg.epsilon = eps;
                    cfg.delta = spec.delta;
                    cfg.alpha = spec.alpha;
                    cfg.mode = parse_mode(spec.mode);
                    cfg.drop_fraction = drop;
                    cfg.drop_mode = parse_drop_mode(spec.drop_mode);
                    cfg.retain_k = k;
                    cfg.master_seed =
                        spec.seed + static_cast<std::uint64_t>(rep);

                    CsvRow row;
                    row.matrix = stem;
                    row.n = b.n;
                    row.nnz = b.nnz();
                    row.method = "P";
                    row.epsilon = eps;
                    row.delta = spec.delta;
                    row.alpha = spec.alpha;
                    row.drop_fraction = drop;
                    row.retain_k = k;
                    row.seed = cfg.master_seed;
                    row.solver = spec.solver;
                    if (rows.count(row.key())) continue;  // resumable

                    try {
                        const auto t0 = clock_type::now();
                        const ApproxInverse inv =
                            compute_preconditioner(b, cfg, n_threads);
                        row.precond_wall_ms = elapsed_ms(t0);
                        const SolveReport rep_out =
                            solve(b, rhs, &inv.m, scfg);
                        row.iterations = rep_out.iterations;
                        row.converged = rep_out.converged;
                        row.final_rel_residual = rep_out.final_rel_residual;
                        row.solve_wall_ms = rep_out.wall_ms;
                        row.total_wall_ms = elapsed_ms(t0);
                    } catch (const std::exception& e) {
                        std::cerr << "bench cell failed: " << e.what() << "\n";
                        row.method = "P-error";
                        row.converged = false;
                        all_completed = false;
                    }
                    rows[row.key()] = row;
                    std::cout << "bench: " << row.line() << "\n";
                }
            }
        }
    }

    // consolidated output, sorted by (matrix, parameters, seed)
    std::vector<CsvRow> sorted;
    sorted.reserve(rows.size());
    for (auto& [key, row] : rows) sorted.push_back(row);
    std::sort(sorted.begin(), sorted.end(), [](const CsvRow& a, const CsvRow& b2) {
        return std::tie(a.matrix, a.drop_fraction, a.epsilon, a.retain_k,
                        a.seed, a.solver) <
               std::tie(b2.matrix, b2.drop_fraction, b2.epsilon, b2.retain_k,
                        b2.seed, b2.solver);
    });
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + out_path + "'");
    out << kCsvHeader << "\n";
    for (const auto& row : sorted) out << row.line() << "\n";

    return all_completed ? 0 : 1;
}

// -------------------------------------------------------------------- recover

int run_recover(const std::string& matrix_path, const std::string& precond_path,
                const std::string& out_path, index_t max_n, double alpha_flag,
                const std::string& mode_flag, double drop_flag) {
    const CsrMatrix b = read_matrix_market_file(matrix_path);
    if (b.n > max_n)
        throw std::runtime_error(
            "recovery is dense and gated to n <= " + std::to_string(max_n) +
            " (matrix has n = " + std::to_string(b.n) + ")");
    const CsrMatrix m_sparse = read_matrix_market_file(precond_path);
    if (m_sparse.n != b.n)
        throw std::runtime_error("dimension mismatch between matrix and preconditioner");

    double alpha = alpha_flag;
    std::string mode = mode_flag;
    double drop = drop_flag;
    std::string drop_mode = "range";
    const std::string meta_path = precond_path + ".meta";
    if (fs::exists(meta_path)) {
        const Metadata meta = read_metadata_file(meta_path);
        if (auto it = meta.find("alpha"); it != meta.end())
            alpha = std::stod(it->second);
        if (auto it = meta.find("mode"); it != meta.end()) mode = it->second;
        if (auto it = meta.find("drop_fraction"); it != meta.end())
            drop = std::stod(it->second);
        if (auto it = meta.find("drop_mode"); it != meta.end())
            drop_mode = it->second;
    }
    if (alpha <= 0.0)
        throw std::runtime_error(
            "recover needs the augmentation parameters; pass --alpha/--mode or "
            "keep the .meta sidecar next to the preconditioner");

    const CsrMatrix dropped =
        drop_small_entries(b, drop, parse_drop_mode(drop_mode));
    const SplitSystem sys =
        augment_and_split(dropped, alpha, parse_mode(mode));

    // Truncation error in a sparse M propagates through every update; the
    // result approximates B^{-1} only as well as M approximated B_hat^{-1}.
    const DenseMatrix recovered =
        recover_inverse(csr_to_dense(m_sparse), {sys.s_diag});
    write_matrix_market_file(densify_to_csr(recovered), out_path);
    std::cout << "recover: wrote " << out_path << "\n";
    return 0;
}

// ------------------------------------------------------------------------ gen

int run_gen(const std::string& kind, index_t n, std::uint64_t seed,
            const std::string& out_path) {
    CsrMatrix m;
    if (kind == "rdb2048") {
        m = make_brusselator(32);
    } else if (kind == "brusselator") {
        index_t grid = 1;
        while ((grid + 1) * (grid + 1) * 2 <= n) ++grid;
        m = make_brusselator(grid);
    } else if (kind == "tridiag") {
        m = make_tridiagonal(n);
    } else if (kind == "convdiff") {
        index_t grid = 1;
        while ((grid + 1) * (grid + 1) <= n) ++grid;
        m = make_convection_diffusion(grid);
    } else if (kind == "ddm") {
        m = make_random_ddm(n, 10.0 / static_cast<double>(n), seed);
    } else if (kind == "broad") {
        m = make_broad_spectrum(n, 24, 1e-4, 1.0, seed);
    } else {
        throw CLI::ValidationError(
            "--kind must be one of rdb2048|brusselator|tridiag|convdiff|ddm|broad");
    }
    write_matrix_market_file(m, out_path);
    std::cout << "gen: wrote " << out_path << " (n=" << m.n
              << ", nnz=" << m.nnz() << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo sparse approximate inverse preconditioner toolkit"};
    app.require_subcommand(1);

    // precondition
    PrecondArgs pa;
    auto* precond = app.add_subcommand(
        "precondition", "Generate preconditioners for a matrix");
    precond->add_option("--matrix", pa.matrix_path, "Matrix Market input file")
        ->required();
    precond->add_option("--epsilon", pa.cfg.epsilon, "stochastic error target");
    precond->add_option("--delta", pa.cfg.delta, "weight truncation threshold");
    precond->add_option("--alpha", pa.cfg.alpha, "diagonal augmentation scale");
    precond->add_option("--mode", pa.mode, "augmentation mode: sign|plain");
    precond->add_option("--drop", pa.cfg.drop_fraction,
                        "entry-dropping fraction in [0,1]");
    precond->add_option("--drop-mode", pa.drop_mode,
                        "drop interpretation: range|count");
    precond->add_option("--retain-k", pa.cfg.retain_k,
                        "entries kept per row (0 = unlimited)");
    precond->add_option("--seed", pa.cfg.master_seed, "master seed");
    precond->add_option("--reps", pa.reps, "repetitions (seed + rep each)");
    precond->add_option("--chains", pa.chains_override,
                        "override the chains-per-row budget");
    precond->add_option("--max-len", pa.max_len_override,
                        "override the chain length cap");
    precond->add_option("--out", pa.out_dir, "output directory");
    precond->add_option("--threads", pa.threads,
                        "worker threads (overrides MCSPAI_THREADS)");

    // solve
    SolveArgs sa;
    auto* solve_cmd =
        app.add_subcommand("solve", "Run a Krylov solver, optionally preconditioned");
    solve_cmd->add_option("--matrix", sa.matrix_path, "Matrix Market input file")
        ->required();
    solve_cmd->add_option("--precond", sa.precond_path,
                          "preconditioner file (approximate inverse)");
    solve_cmd->add_option("--solver", sa.solver, "gmres|bicgstab");
    solve_cmd->add_option("--tol", sa.cfg.rel_tol, "relative residual target");
    solve_cmd->add_option("--max-iters", sa.cfg.max_iters, "iteration cap");
    solve_cmd->add_option("--restart", sa.cfg.restart, "GMRES restart length");
    solve_cmd->add_option("--rhs", sa.rhs,
                          "rhs file, or 'ones-product' for b = B*1");
    solve_cmd->add_option("--csv", sa.csv_path, "CSV file to append the row to");

    // bench
    std::string bench_spec, bench_out = "results.csv";
    int bench_threads = 0;
    auto* bench_cmd =
        app.add_subcommand("bench", "Run a parameter sweep and consolidate CSV");
    bench_cmd->add_option("--spec", bench_spec, "sweep spec file (key=value)")
        ->required();
    bench_cmd->add_option("--out", bench_out, "consolidated CSV path");
    bench_cmd->add_option("--jobs", bench_threads,
                          "worker threads per cell (overrides MCSPAI_THREADS)");

    // recover
    std::string rec_matrix, rec_precond, rec_out, rec_mode = "sign";
    long long rec_max_n = 4096;
    double rec_alpha = 0.0, rec_drop = 0.0;
    auto* rec_cmd = app.add_subcommand(
        "recover", "Dense recovery of B^{-1} from an approximate B_hat^{-1}");
    rec_cmd->add_option("--matrix", rec_matrix, "original matrix")->required();
    rec_cmd->add_option("--precond", rec_precond, "approximate inverse file")
        ->required();
    rec_cmd->add_option("--out", rec_out, "output file")->required();
    rec_cmd->add_option("--max-n", rec_max_n, "dense-recovery size cap");
    rec_cmd->add_option("--alpha", rec_alpha,
                        "augmentation alpha (when no .meta sidecar)");
    rec_cmd->add_option("--mode", rec_mode, "augmentation mode: sign|plain");
    rec_cmd->add_option("--drop", rec_drop, "drop fraction used at generation");

    // gen
    std::string gen_kind, gen_out;
    long long gen_n = 256;
    std::uint64_t gen_seed = 0;
    auto* gen_cmd =
        app.add_subcommand("gen", "Generate a synthetic test matrix");
    gen_cmd
        ->add_option("--kind", gen_kind,
                     "rdb2048|brusselator|tridiag|convdiff|ddm|broad")
        ->required();
    gen_cmd->add_option("--n", gen_n, "target dimension");
    gen_cmd->add_option("--seed", gen_seed, "generator seed");
    gen_cmd->add_option("--out", gen_out, "output file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (precond->parsed()) return run_precondition(pa);
        if (solve_cmd->parsed()) return run_solve(sa);
        if (bench_cmd->parsed())
            return run_bench(bench_spec, bench_out, bench_threads);
        if (rec_cmd->parsed())
            return run_recover(rec_matrix, rec_precond, rec_out, rec_max_n,
                               rec_alpha, rec_mode, rec_drop);
        if (gen_cmd->parsed()) return run_gen(gen_kind, gen_n, gen_seed, gen_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
