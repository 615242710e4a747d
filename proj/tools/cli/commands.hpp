#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "seriation/loss.hpp"
#include "seriation/permutation.hpp"
#include "seriation/similarity_matrix.hpp"
#include "seriation/solver_report.hpp"
#include "seriation/solvers.hpp"

namespace seriation::cli {

namespace fs = std::filesystem;

/// Exit codes shared by every command.
enum Exit : int { ok = 0, usage = 1, parse_error = 2, disconnected = 3, solver_failure = 4 };

struct Global {
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    bool quiet = false;
};

/// Solver and loss choice as given on the command line. `loss` is one of
/// auto, 2sum, r2sum, huber; auto picks the loss the solver optimises.
struct SolverSpec {
    SolverName solver = SolverName::eta_spectral;
    std::string loss = "auto";
    std::optional<double> delta;   // Huber width; default: bandwidth estimate
    std::optional<double> lambda;  // R2SUM cap; default: delta²
    std::size_t max_iter = 0;      // 0 keeps the solver default
    TieBreak tiebreak = TieBreak::spectral_init;
};

struct SolverRun {
    SolverReport report;
    LossKind kind;
    double delta = 0.0;   // width used
    std::size_t delta_hat = 0;
};

/// Runs the solver; `report.objective` is loss(a, permutation, kind).
SolverRun run_solver(const SimilarityMatrix& a, const SolverSpec& spec);

/// "2sum", "r2sum(λ)", "huber(δ)".
std::string loss_label(const LossKind& kind);

// --------------------------------------------------------------- commands

struct GenBandedArgs {
    std::size_t n = 200, delta = 20;
    double s_ratio = 0.0;
    fs::path out;  // basename
};
int cmd_gen_banded(const GenBandedArgs& args, const Global& g, std::ostream& out, std::ostream& err);

struct GenDupliArgs {
    std::size_t big_n = 200;
    double ratio = 1.33;
    std::string kind = "banded";  // banded | powerlaw
    double gamma = 0.5;
    std::optional<std::size_t> delta;  // banded; default N/5
    std::size_t s = 0;
    double noise = 0.0;
    fs::path out;
};
int cmd_gen_dupli(const GenDupliArgs& args, const Global& g, std::ostream& out, std::ostream& err);

struct ReorderArgs {
    fs::path matrix;
    SolverSpec solver;
    fs::path perm_out;
};
int cmd_reorder(const ReorderArgs& args, const Global& g, std::ostream& out, std::ostream& err);

struct EvalArgs {
    fs::path matrix, perm;
    std::optional<fs::path> truth;
    std::optional<double> delta;  // default: bandwidth estimate
    bool dist2r = false;
    std::optional<fs::path> csv_out;  // default: standard output
};
int cmd_eval(const EvalArgs& args, const Global& g, std::ostream& out, std::ostream& err);

struct BenchArgs {
    fs::path spec;
    std::optional<fs::path> long_out, aggregate_out;  // override the spec file
};
int cmd_bench(const BenchArgs& args, const Global& g, std::ostream& out, std::ostream& err);

struct GridThresholdArgs {
    fs::path matrix;
    double lo = 0.0, hi = 0.0;
    std::size_t count = 1;
    SolverSpec solver;
    std::optional<fs::path> truth;
    std::optional<fs::path> csv_out, perm_out;
};
int cmd_grid_threshold(const GridThresholdArgs& args, const Global& g, std::ostream& out, std::ostream& err);

struct DupliArgs {
    fs::path matrix, counts;
    std::string inner = "eta-spectral";
    std::size_t max_iter = 100;
    std::optional<double> inner_delta;
    std::optional<fs::path> assign_out, s_out;
    std::optional<fs::path> truth_assign, truth_s;
};
int cmd_dupli(const DupliArgs& args, const Global& g, std::ostream& out, std::ostream& err);

struct PlotArgs {
    std::string mode = "scatter";  // scatter | heatmap
    std::optional<fs::path> perm, truth, matrix;
    bool align_flip = false, align_shift = false;
    fs::path out;
};
int cmd_plot(const PlotArgs& args, const Global& g, std::ostream& out, std::ostream& err);

// ---------------------------------------------------------------- helpers

/// Alignment of recovered positions onto reference positions.
struct Alignment {
    std::size_t shift = 0;
    bool flipped = false;
    std::size_t agreement = 0;  // positions that coincide after alignment
    std::vector<std::size_t> positions;
};

/// With `shift`, every circular shift (and its mirror when `flip`) is tried
/// and the one with most exact agreements wins, smallest shift first. With
/// `flip` alone the orientation follows the sign of Kendall's tau.
Alignment align(const Permutation& recovered, const Permutation& reference, bool flip, bool shift);

/// Linearly spaced grid; count = 1 gives {lo}.
std::vector<double> linspace(double lo, double hi, std::size_t count);

/// Keeps entries whose value is >= threshold.
SimilarityMatrix threshold_matrix(const SimilarityMatrix& a, double threshold);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& out, const CsvTable& t);
/// Plain comma-separated reader (no quoting), the inverse of write_csv.
CsvTable read_csv(std::istream& in);

}  // namespace seriation::cli
