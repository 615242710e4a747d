#include "cli.hpp"

#include <functional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "commands.hpp"

namespace seriation::cli {

namespace {

struct SolverFlags {
    std::string solver = "eta-spectral";
    std::string tiebreak = "spectral_init";
};

void add_solver_options(CLI::App* sub, SolverSpec& spec, SolverFlags& flags) {
    sub->add_option("--solver", flags.solver, "spectral, eta-spectral, ubi, faq, fwtb")->capture_default_str();
    sub->add_option("--loss", spec.loss, "auto, 2sum, r2sum, huber")->capture_default_str();
    sub->add_option("--delta", spec.delta, "Huber width (default: bandwidth estimate)");
    sub->add_option("--lambda", spec.lambda, "R2SUM cap (default: delta^2)");
    sub->add_option("--max-iter", spec.max_iter, "iteration cap, 0 keeps the solver default");
    sub->add_option("--tiebreak", flags.tiebreak, "fwtb start: naive, spectral_init")->capture_default_str();
}

void finish_solver(SolverSpec& spec, const SolverFlags& flags) {
    spec.solver = parse_solver_name(flags.solver);
    if (flags.tiebreak == "naive") spec.tiebreak = TieBreak::naive;
    else if (flags.tiebreak == "spectral_init") spec.tiebreak = TieBreak::spectral_init;
    else throw CLI::ValidationError("--tiebreak", "expected naive or spectral_init");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Seriation of similarity matrices, with and without duplications"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_version_flag("--version", "seriation 1.0");

    Global g;
    app.add_option("--seed", g.seed, "master random seed")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads for bench")->check(CLI::PositiveNumber);
    app.add_flag("--quiet", g.quiet, "suppress summaries");

    std::function<int()> action;

    // gen banded | gen dupli
    auto* gen = app.add_subcommand("gen", "generate synthetic instances");
    gen->require_subcommand(1);
    GenBandedArgs gb;
    auto* gen_b = gen->add_subcommand("banded", "band matrix with outliers, shuffled");
    gen_b->add_option("--n", gb.n)->capture_default_str();
    gen_b->add_option("--delta", gb.delta)->capture_default_str();
    gen_b->add_option("--s-ratio", gb.s_ratio, "outliers as a fraction of n")->capture_default_str();
    gen_b->add_option("--out", gb.out, "basename of the output files")->required();
    gen_b->callback([&] { action = [&] { return cmd_gen_banded(gb, g, out, err); }; });

    GenDupliArgs gd;
    auto* gen_d = gen->add_subcommand("dupli", "duplication instance");
    gen_d->add_option("--N", gd.big_n, "fragments")->capture_default_str();
    gen_d->add_option("--ratio", gd.ratio, "N / n")->capture_default_str();
    gen_d->add_option("--kind", gd.kind, "banded, powerlaw")->capture_default_str();
    gen_d->add_option("--gamma", gd.gamma, "power-law exponent")->capture_default_str();
    gen_d->add_option("--delta", gd.delta, "band half-width (default N/5)");
    gen_d->add_option("--s", gd.s, "outliers in the banded kind")->capture_default_str();
    gen_d->add_option("--noise", gd.noise, "multiplicative noise proportion")->capture_default_str();
    gen_d->add_option("--out", gd.out, "basename of the output files")->required();
    gen_d->callback([&] { action = [&] { return cmd_gen_dupli(gd, g, out, err); }; });

    // reorder
    ReorderArgs ra;
    SolverFlags rf;
    auto* reorder = app.add_subcommand("reorder", "find an ordering of a similarity matrix");
    reorder->add_option("matrix", ra.matrix)->required();
    reorder->add_option("-o,--out", ra.perm_out, "permutation file")->required();
    add_solver_options(reorder, ra.solver, rf);
    reorder->callback([&] {
        finish_solver(ra.solver, rf);
        action = [&] { return cmd_reorder(ra, g, out, err); };
    });

    // eval
    EvalArgs ea;
    auto* eval = app.add_subcommand("eval", "score an ordering");
    eval->add_option("matrix", ea.matrix)->required();
    eval->add_option("perm", ea.perm)->required();
    eval->add_option("--truth", ea.truth, "reference permutation");
    eval->add_option("--delta", ea.delta, "loss width (default: bandwidth estimate)");
    eval->add_flag("--dist2r", ea.dist2r, "add the distance to strong-R");
    eval->add_option("--csv", ea.csv_out, "output file (default: stdout)");
    eval->callback([&] { action = [&] { return cmd_eval(ea, g, out, err); }; });

    // bench
    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "run a benchmark grid from a JSON spec");
    bench->add_option("spec", ba.spec)->required();
    bench->add_option("--long", ba.long_out, "per-run CSV (overrides the spec)");
    bench->add_option("--aggregate", ba.aggregate_out, "aggregate CSV (overrides the spec)");
    bench->callback([&] { action = [&] { return cmd_bench(ba, g, out, err); }; });

    // grid-threshold
    GridThresholdArgs ga;
    SolverFlags gf;
    auto* grid = app.add_subcommand("grid-threshold", "reorder after thresholding at several levels");
    grid->add_option("matrix", ga.matrix)->required();
    grid->add_option("--lo", ga.lo)->required();
    grid->add_option("--hi", ga.hi);
    grid->add_option("--count", ga.count)->capture_default_str();
    grid->add_option("--truth", ga.truth, "reference permutation");
    grid->add_option("--csv", ga.csv_out, "output file (default: stdout)");
    grid->add_option("-o,--out", ga.perm_out, "permutation of the best threshold");
    add_solver_options(grid, ga.solver, gf);
    grid->callback([&] {
        finish_solver(ga.solver, gf);
        if (ga.count == 1) ga.hi = ga.lo;
        action = [&] { return cmd_grid_threshold(ga, g, out, err); };
    });

    // dupli
    DupliArgs da;
    auto* dupli = app.add_subcommand("dupli", "seriation with duplications");
    dupli->add_option("matrix", da.matrix)->required();
    dupli->add_option("counts", da.counts)->required();
    dupli->add_option("--inner", da.inner, "spectral, eta-spectral, h-ubi")->capture_default_str();
    dupli->add_option("--max-iter", da.max_iter)->capture_default_str();
    dupli->add_option("--inner-delta", da.inner_delta);
    dupli->add_option("--assign-out", da.assign_out);
    dupli->add_option("--s-out", da.s_out);
    dupli->add_option("--truth-assign", da.truth_assign);
    dupli->add_option("--truth-s", da.truth_s);
    dupli->callback([&] { action = [&] { return cmd_dupli(da, g, out, err); }; });

    // plot scatter | plot heatmap
    PlotArgs pa;
    auto* plot = app.add_subcommand("plot", "SVG plots");
    plot->require_subcommand(1);
    auto* scatter = plot->add_subcommand("scatter", "recovered vs true positions");
    scatter->add_option("perm", pa.perm)->required();
    scatter->add_option("truth", pa.truth)->required();
    scatter->add_flag("--align-flip", pa.align_flip);
    scatter->add_flag("--align-shift", pa.align_shift);
    scatter->add_option("-o,--out", pa.out)->required();
    scatter->callback([&] {
        pa.mode = "scatter";
        action = [&] { return cmd_plot(pa, g, out, err); };
    });
    auto* heat = plot->add_subcommand("heatmap", "reordered matrix");
    heat->add_option("matrix", pa.matrix)->required();
    heat->add_option("--perm", pa.perm);
    heat->add_option("-o,--out", pa.out)->required();
    heat->callback([&] {
        pa.mode = "heatmap";
        action = [&] { return cmd_plot(pa, g, out, err); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Exit::ok : Exit::usage;
    } catch (const std::exception& e) {
        err << "usage error: " << e.what() << '\n';
        return Exit::usage;
    }
    if (g.threads == 0) g.threads = std::max(1u, std::thread::hardware_concurrency());
    return action ? action() : Exit::usage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"seriation"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace seriation::cli
