#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "seriation/bandwidth.hpp"
#include "seriation/duplication.hpp"
#include "seriation/error.hpp"
#include "seriation/generators.hpp"
#include "seriation/io.hpp"
#include "seriation/kendall.hpp"
#include "seriation/projections.hpp"
#include "seriation/spectral.hpp"

namespace seriation::cli {

using json = nlohmann::ordered_json;

namespace {

/// Maps library errors onto exit codes and prints a one-line message.
int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return Exit::parse_error;
    } catch (const DimensionError& e) {
        err << "input error: " << e.what() << '\n';
        return Exit::parse_error;
    } catch (const DisconnectedError& e) {
        err << "disconnected matrix, component sizes:";
        for (std::size_t s : e.component_sizes()) err << ' ' << s;
        err << '\n';
        return Exit::disconnected;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << '\n';
        return Exit::solver_failure;
    }
}

void require_connected(const SimilarityMatrix& a) {
    if (!a.is_connected()) throw DisconnectedError(a.component_sizes());
}

fs::path with_suffix(const fs::path& base, const std::string& suffix) { return fs::path(base.string() + suffix); }

std::ofstream open_out(const fs::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("cannot write " + p.string());
    return f;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

LossKind resolve_loss(const std::string& name, SolverName solver, double delta, double lambda) {
    std::string l = name;
    if (l == "auto") l = (solver == SolverName::spectral || solver == SolverName::faq) ? "2sum" : "huber";
    if (l == "2sum") return TwoSum{};
    if (l == "r2sum") return R2Sum{lambda};
    if (l == "huber") return Huber{delta};
    throw DomainError("unknown loss '" + name + "' (auto, 2sum, r2sum, huber)");
}

QapKind to_qap(const LossKind& k) {
    if (std::holds_alternative<TwoSum>(k)) return TwoSumB{};
    if (const auto* r = std::get_if<R2Sum>(&k)) return TruncatedB{r->lambda};
    return HuberB{std::get<Huber>(k).delta};
}

std::string num(double v) { return format_double(v); }

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + v[k];
    return s;
}

// ---------------------------------------------------------------- SVG
class Svg {
public:
    Svg(double w, double h) : w_(w), h_(h) {}
    void line(double x1, double y1, double x2, double y2, const std::string& stroke) {
        body_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
              << "\" stroke=\"" << stroke << "\"/>\n";
    }
    void circle(double x, double y, double r) {
        body_ << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r) << "\" fill=\"black\"/>\n";
    }
    void rect(double x, double y, double w, double h, int gray) {
        body_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
              << "\" fill=\"rgb(" << gray << ',' << gray << ',' << gray << ")\"/>\n";
    }
    void text(double x, double y, const std::string& s) {
        body_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"12\">" << s << "</text>\n";
    }
    void save(const fs::path& p) const {
        auto f = open_out(p);
        f << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
          << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(w_) << "\" height=\""
          << num(h_) << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
          << body_.str() << "</svg>\n";
    }

private:
    double w_, h_;
    std::ostringstream body_;
};

}  // namespace

// ---------------------------------------------------------------- solvers

std::string loss_label(const LossKind& kind) { return to_string(kind); }

SolverRun run_solver(const SimilarityMatrix& a, const SolverSpec& spec) {
    SolverRun run;
    run.delta_hat = estimate_bandwidth(a).delta;
    run.delta = spec.delta.value_or(static_cast<double>(run.delta_hat));
    const double lambda = spec.lambda.value_or(run.delta * run.delta);
    run.kind = resolve_loss(spec.loss, spec.solver, run.delta, lambda);
    validate(run.kind);

    switch (spec.solver) {
        case SolverName::spectral:
            run.report = spectral_order(a);
            break;
        case SolverName::eta_spectral: {
            EtaSpectralConfig cfg;
            cfg.delta = run.delta;
            if (spec.max_iter) cfg.max_iter = spec.max_iter;
            run.report = eta_spectral(a, cfg);
            break;
        }
        case SolverName::ubi: {
            UbiConfig cfg;
            if (spec.max_iter) cfg.max_iter = spec.max_iter;
            run.report = ubi(a, run.kind, cfg);
            break;
        }
        case SolverName::faq: {
            FaqOptions opts;
            if (spec.max_iter) opts.max_iter = spec.max_iter;
            run.report = faq(a, to_qap(run.kind), opts);
            break;
        }
        case SolverName::fwtb: {
            FwtbOptions opts;
            opts.tiebreak = spec.tiebreak;
            if (spec.max_iter) opts.max_iter = spec.max_iter;
            run.report = fwtb(a, run.kind, opts);
            break;
        }
    }
    run.report.loss_kind = run.kind;
    run.report.objective = loss(a, run.report.permutation, run.kind);
    return run;
}

// ---------------------------------------------------------------- gen

int cmd_gen_banded(const GenBandedArgs& args, const Global& g, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto inst = gen_banded(args.n, args.delta, args.s_ratio, g.seed);
        const auto sim = with_suffix(args.out, ".sim"), truth = with_suffix(args.out, ".truth.perm");
        write_similarity(sim, inst.a);
        write_permutation(truth, inst.truth);
        if (!g.quiet) {
            out << json{{"matrix", sim.string()}, {"truth", truth.string()}, {"n", inst.n}, {"delta", inst.delta},
                        {"s", inst.s}, {"seed", inst.seed}}.dump()
                << '\n';
        }
        return Exit::ok;
    });
}

int cmd_gen_dupli(const GenDupliArgs& args, const Global& g, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        DupliMatrixKind kind;
        if (args.kind == "powerlaw") kind = PowerLawKind{args.gamma};
        else if (args.kind == "banded") kind = BandedKind{args.delta.value_or(args.big_n / 5), args.s};
        else throw DomainError("unknown kind '" + args.kind + "' (banded, powerlaw)");
        const auto inst = gen_dupli_instance(args.big_n, args.ratio, kind, args.noise, g.seed);
        const auto sim = with_suffix(args.out, ".sim"), counts = with_suffix(args.out, ".counts"),
                   assign = with_suffix(args.out, ".truth.assign"), smat = with_suffix(args.out, ".truth.s");
        write_similarity(sim, inst.a);
        write_counts(counts, inst.counts);
        write_assignment(assign, inst.z_true);
        write_dense(smat, inst.s_true);
        if (!g.quiet) {
            out << json{{"matrix", sim.string()}, {"counts", counts.string()}, {"truth_assign", assign.string()},
                        {"truth_s", smat.string()}, {"n", inst.counts.size()}, {"N", inst.counts.total()},
                        {"seed", inst.seed}}.dump()
                << '\n';
        }
        return Exit::ok;
    });
}

// ---------------------------------------------------------------- reorder / eval

int cmd_reorder(const ReorderArgs& args, const Global& g, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto a = read_similarity(args.matrix);
        require_connected(a);
        const auto t0 = std::chrono::steady_clock::now();
        const auto run = run_solver(a, args.solver);
        const double elapsed = seconds_since(t0);
        write_permutation(args.perm_out, run.report.permutation);
        json summary{{"solver", to_string(args.solver.solver)},
                     {"loss", loss_label(run.kind)},
                     {"objective", run.report.objective},
                     {"iterations", run.report.iterations},
                     {"elapsed_s", elapsed},
                     {"delta_hat", run.delta_hat},
                     {"warning", run.report.warning}};
        if (!run.report.note.empty()) summary["note"] = run.report.note;
        out << summary.dump() << '\n';
        if (run.report.warning && !g.quiet) err << "warning: " << run.report.note << '\n';
        return Exit::ok;
    });
}

int cmd_eval(const EvalArgs& args, const Global& /*g*/, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto a = read_similarity(args.matrix);
        const auto p = read_permutation(args.perm);
        if (p.size() != a.n()) throw DimensionError("permutation size differs from the matrix");
        const double delta = args.delta.value_or(static_cast<double>(estimate_bandwidth(a).delta));

        CsvTable t;
        t.header = {"n", "delta", "kendall_tau", "two_sum", "r2sum", "huber"};
        if (args.dist2r) t.header.push_back("dist2r");
        std::vector<std::string> row{std::to_string(a.n()), num(delta)};
        if (args.truth) {
            const auto truth = read_permutation(*args.truth);
            if (truth.size() != a.n()) throw DimensionError("truth size differs from the matrix");
            row.push_back(num(kendall_tau(p, truth)));
        } else {
            row.emplace_back();
        }
        row.push_back(num(loss(a, p, TwoSum{})));
        row.push_back(num(loss(a, p, R2Sum{delta * delta})));
        row.push_back(num(loss(a, p, Huber{delta})));
        if (args.dist2r) row.push_back(num(dist_to_strong_r(a.permuted(p).dense())));
        t.rows.push_back(row);
        if (args.csv_out) {
            auto f = open_out(*args.csv_out);
            write_csv(f, t);
        } else {
            write_csv(out, t);
        }
        return Exit::ok;
    });
}

// ---------------------------------------------------------------- bench

namespace {

struct BenchSpec {
    std::vector<std::size_t> n;
    std::vector<double> delta_frac;          // δ = round(frac · n)
    std::vector<std::size_t> delta_fixed;    // or fixed δ
    std::vector<double> s_ratio;
    std::vector<std::string> solvers, losses;
    std::size_t repetitions = 20;
    std::uint64_t seed = 0;
    bool dist2r = false, timing = false;
    std::string output = "bench.csv", aggregate = "bench_aggregate.csv";
};

BenchSpec parse_bench(const fs::path& path, std::uint64_t default_seed) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path.string(), 0);
    json j;
    try {
        j = json::parse(f);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("bench spec: ") + e.what(), 0);
    }
    BenchSpec s;
    try {
        s.n = j.at("n").get<std::vector<std::size_t>>();
        if (j.contains("delta")) s.delta_fixed = j["delta"].get<std::vector<std::size_t>>();
        if (j.contains("delta_frac")) s.delta_frac = j["delta_frac"].get<std::vector<double>>();
        s.s_ratio = j.at("s_ratio").get<std::vector<double>>();
        s.solvers = j.at("solvers").get<std::vector<std::string>>();
        s.losses = j.value("losses", std::vector<std::string>{"auto"});
        s.repetitions = j.value("repetitions", std::size_t{20});
        s.seed = j.value("seed", default_seed);
        s.dist2r = j.value("dist2r", false);
        s.timing = j.value("timing", false);
        s.output = j.value("output", s.output);
        s.aggregate = j.value("aggregate", s.aggregate);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bench spec: ") + e.what(), 0);
    }
    if (s.repetitions < 1) throw ParseError("bench spec: repetitions must be >= 1", 0);
    if (s.delta_fixed.empty() == s.delta_frac.empty())
        throw ParseError("bench spec: give exactly one of delta, delta_frac", 0);
    for (const auto& name : s.solvers) {
        try {
            parse_solver_name(name);
        } catch (const Error&) {
            throw ParseError("bench spec: unknown solver '" + name + "'", 0);
        }
    }
    return s;
}

struct BenchCell {
    std::size_t n, delta;
    double s_ratio;
    std::size_t rep;
    std::uint64_t seed;
    std::string solver, loss;
};

const std::vector<std::string> kMetrics{"kendall_tau", "two_sum", "r2sum", "huber", "dist2r"};

}  // namespace

int cmd_bench(const BenchArgs& args, const Global& g, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto spec = parse_bench(args.spec, g.seed);
        std::vector<BenchCell> cells;
        std::uint64_t instance = 0;
        for (std::size_t n : spec.n) {
            std::vector<std::size_t> deltas = spec.delta_fixed;
            for (double f : spec.delta_frac)
                deltas.push_back(static_cast<std::size_t>(std::llround(f * static_cast<double>(n))));
            for (std::size_t d : deltas)
                for (double sr : spec.s_ratio)
                    for (std::size_t r = 0; r < spec.repetitions; ++r, ++instance) {
                        const std::uint64_t seed = Rng::derive(spec.seed, instance);
                        for (const auto& solver : spec.solvers)
                            for (const auto& l : spec.losses) cells.push_back({n, d, sr, r, seed, solver, l});
                    }
        }

        std::vector<std::vector<std::string>> rows(cells.size());
        std::vector<std::map<std::string, double>> values(cells.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t k; (k = next.fetch_add(1)) < cells.size();) {
                const auto& c = cells[k];
                std::vector<std::string> row{std::to_string(c.n), std::to_string(c.delta), num(c.s_ratio),
                                             std::to_string(c.rep), std::to_string(c.seed), c.solver, c.loss};
                std::string error;
                double elapsed = 0.0;
                std::map<std::string, double> v;
                try {
                    const auto inst = gen_banded(c.n, c.delta, c.s_ratio, c.seed);
                    SolverSpec ss;
                    ss.solver = parse_solver_name(c.solver);
                    ss.loss = c.loss;
                    const auto t0 = std::chrono::steady_clock::now();
                    const auto run = run_solver(inst.a, ss);
                    elapsed = seconds_since(t0);
                    const auto& p = run.report.permutation;
                    const double d = static_cast<double>(c.delta);
                    v["kendall_tau"] = kendall_tau(p, inst.truth);
                    v["two_sum"] = loss(inst.a, p, TwoSum{});
                    v["r2sum"] = loss(inst.a, p, R2Sum{d * d});
                    v["huber"] = loss(inst.a, p, Huber{std::max(1.0, d)});
                    if (spec.dist2r) v["dist2r"] = dist_to_strong_r(inst.a.permuted(p).dense());
                } catch (const std::exception& e) {
                    error = e.what();
                    std::replace(error.begin(), error.end(), ',', ';');
                    std::replace(error.begin(), error.end(), '\n', ' ');
                    v.clear();
                }
                for (const auto& m : kMetrics) row.push_back(v.count(m) ? num(v.at(m)) : "");
                if (spec.timing) row.push_back(num(elapsed));
                row.push_back(error);
                rows[k] = std::move(row);
                values[k] = std::move(v);
            }
        };
        const std::size_t threads = std::max<std::size_t>(1, std::min(g.threads, cells.size()));
        std::vector<std::thread> pool;
        for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();

        CsvTable long_t;
        long_t.header = {"n", "delta", "s_ratio", "rep", "seed", "solver", "loss"};
        long_t.header.insert(long_t.header.end(), kMetrics.begin(), kMetrics.end());
        if (spec.timing) long_t.header.push_back("elapsed_s");
        long_t.header.push_back("error");
        long_t.rows = rows;

        // Aggregate in first-appearance (grid) order.
        CsvTable agg;
        agg.header = {"n", "delta", "s_ratio", "solver", "loss", "count", "errors"};
        for (const auto& m : kMetrics) {
            agg.header.push_back(m + "_mean");
            agg.header.push_back(m + "_std");
        }
        std::vector<std::string> keys;
        std::map<std::string, std::vector<std::size_t>> groups;
        for (std::size_t k = 0; k < cells.size(); ++k) {
            const auto& c = cells[k];
            const std::string key = join({std::to_string(c.n), std::to_string(c.delta), num(c.s_ratio), c.solver, c.loss});
            if (!groups.count(key)) keys.push_back(key);
            groups[key].push_back(k);
        }
        for (const auto& key : keys) {
            const auto& idx = groups[key];
            const auto& c = cells[idx.front()];
            std::size_t errors = 0;
            for (std::size_t k : idx) errors += values[k].empty() ? 1 : 0;
            std::vector<std::string> row{std::to_string(c.n), std::to_string(c.delta), num(c.s_ratio), c.solver, c.loss,
                                         std::to_string(idx.size()), std::to_string(errors)};
            for (const auto& m : kMetrics) {
                std::vector<double> xs;
                for (std::size_t k : idx)
                    if (values[k].count(m)) xs.push_back(values[k].at(m));
                if (xs.empty()) {
                    row.emplace_back();
                    row.emplace_back();
                    continue;
                }
                double mean = 0.0, var = 0.0;
                for (double x : xs) mean += x;
                mean /= static_cast<double>(xs.size());
                for (double x : xs) var += (x - mean) * (x - mean);
                row.push_back(num(mean));
                row.push_back(num(std::sqrt(var / static_cast<double>(xs.size()))));
            }
            agg.rows.push_back(row);
        }

        const fs::path long_path = args.long_out.value_or(fs::path(spec.output));
        const fs::path agg_path = args.aggregate_out.value_or(fs::path(spec.aggregate));
        {
            auto f = open_out(long_path);
            write_csv(f, long_t);
        }
        {
            auto f = open_out(agg_path);
            write_csv(f, agg);
        }
        if (!g.quiet) {
            out << json{{"rows", long_t.rows.size()}, {"long", long_path.string()}, {"aggregate", agg_path.string()}}.dump()
                << '\n';
        }
        return Exit::ok;
    });
}

// ---------------------------------------------------------------- grid-threshold

int cmd_grid_threshold(const GridThresholdArgs& args, const Global& g, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (args.count < 1) throw DomainError("count must be >= 1");
        if (args.count > 1 && !(args.lo < args.hi)) throw DomainError("need lo < hi");
        const auto a = read_similarity(args.matrix);
        std::optional<Permutation> truth;
        if (args.truth) truth = read_permutation(*args.truth);

        CsvTable t;
        t.header = {"threshold", "status", "nnz", "delta_hat", "r2sum", "kendall_tau"};
        std::optional<Permutation> best;
        double best_score = 0.0, best_threshold = 0.0;
        for (double thr : linspace(args.lo, args.hi, args.count)) {
            const auto at = threshold_matrix(a, thr);
            std::vector<std::string> row{num(thr)};
            if (!at.is_connected()) {
                row.insert(row.end(), {"disconnected", std::to_string(at.nnz()), "", "", ""});
                t.rows.push_back(row);
                continue;
            }
            SolverSpec spec = args.solver;
            const auto run = run_solver(at, spec);
            const double d = static_cast<double>(run.delta_hat);
            const double score = loss(at, run.report.permutation, R2Sum{d * d});
            row.insert(row.end(), {"ok", std::to_string(at.nnz()), std::to_string(run.delta_hat), num(score),
                                   truth ? num(kendall_tau(run.report.permutation, *truth)) : ""});
            t.rows.push_back(row);
            if (!best || score < best_score) {
                best = run.report.permutation;
                best_score = score;
                best_threshold = thr;
            }
        }
        if (args.csv_out) {
            auto f = open_out(*args.csv_out);
            write_csv(f, t);
        } else {
            write_csv(out, t);
        }
        if (!best) {
            err << "every threshold disconnects the matrix\n";
            return Exit::disconnected;
        }
        if (args.perm_out) write_permutation(*args.perm_out, *best);
        if (!g.quiet) {
            err << json{{"best_threshold", best_threshold}, {"best_r2sum", best_score}}.dump() << '\n';
        }
        return Exit::ok;
    });
}

// ---------------------------------------------------------------- dupli

int cmd_dupli(const DupliArgs& args, const Global& /*g*/, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto a = read_similarity(args.matrix);
        const auto c = read_counts(args.counts);
        if (c.size() != a.n()) throw DimensionError("counts size differs from the matrix");
        DupliConfig cfg;
        cfg.inner = parse_inner_solver(args.inner);
        cfg.max_iter = args.max_iter;
        cfg.inner_delta = args.inner_delta;
        const auto rep = alt_proj_dupli(a, c, cfg);
        if (args.assign_out) write_assignment(*args.assign_out, rep.z);
        if (args.s_out) write_dense(*args.s_out, rep.s);

        const double a_norm = a.dense().norm();
        json summary{{"inner", args.inner},
                     {"residual", rep.feasibility_residual},
                     {"relative_residual", a_norm > 0 ? rep.feasibility_residual / a_norm : 0.0},
                     {"iterations", rep.iterations},
                     {"converged_by", rep.converged_by == DupliStop::z_fixed_point ? "z_fixed_point" : "max_iter"},
                     {"elapsed_s", rep.elapsed_seconds}};
        if (args.truth_assign) {
            const auto zt = read_assignment(*args.truth_assign);
            const auto d = aligned_assignment_distance(zt, rep.z);
            summary["mean_dist"] = json{{"mean", d.mean}, {"std", d.stddev}, {"median", d.median}};
        }
        if (args.truth_s) summary["d2s"] = relative_frobenius_aligned(read_dense(*args.truth_s), rep.s);
        out << summary.dump() << '\n';
        return Exit::ok;
    });
}

// ---------------------------------------------------------------- plot

int cmd_plot(const PlotArgs& args, const Global& /*g*/, std::ostream& /*out*/, std::ostream& err) {
    return guarded(err, [&] {
        constexpr double size = 600.0, margin = 40.0;
        Svg svg(size + 2 * margin, size + 2 * margin);
        if (args.mode == "scatter") {
            if (!args.perm || !args.truth) throw DomainError("scatter needs --perm and --truth");
            const auto p = read_permutation(*args.perm), t = read_permutation(*args.truth);
            if (p.size() != t.size()) throw DimensionError("permutation sizes differ");
            const auto al = align(p, t, args.align_flip, args.align_shift);
            const double n = static_cast<double>(p.size());
            const double step = size / std::max(1.0, n - 1.0);
            svg.line(margin, margin + size, margin + size, margin, "lightgray");
            for (std::size_t i = 0; i < p.size(); ++i) {
                svg.circle(margin + step * static_cast<double>(t.position(i)),
                           margin + size - step * static_cast<double>(al.positions[i]), 2.0);
            }
            svg.text(margin, margin - 10, "true position (x) vs recovered position (y), shift " +
                                              std::to_string(al.shift) + (al.flipped ? ", flipped" : ""));
        } else if (args.mode == "heatmap") {
            if (!args.matrix) throw DomainError("heatmap needs --matrix");
            const auto a = read_similarity(*args.matrix);
            const auto p = args.perm ? read_permutation(*args.perm) : Permutation::identity(a.n());
            if (p.size() != a.n()) throw DimensionError("permutation size differs from the matrix");
            const double top = a.max_value();
            const double cell = size / static_cast<double>(std::max<std::size_t>(1, a.n()));
            for (const auto& e : a.entries()) {
                const int gray = static_cast<int>(std::lround(255.0 * (1.0 - e.value / top)));
                const double x = margin + cell * static_cast<double>(p.position(e.i));
                const double y = margin + cell * static_cast<double>(p.position(e.j));
                svg.rect(x, y, cell, cell, gray);
                if (e.i != e.j) svg.rect(y, x, cell, cell, gray);
            }
        } else {
            throw DomainError("unknown plot mode '" + args.mode + "' (scatter, heatmap)");
        }
        svg.save(args.out);
        return Exit::ok;
    });
}

// ---------------------------------------------------------------- helpers

Alignment align(const Permutation& recovered, const Permutation& reference, bool flip, bool shift) {
    const std::size_t n = recovered.size();
    if (reference.size() != n) throw DimensionError("align: size mismatch");
    auto candidate = [&](std::size_t s, bool mirrored) {
        Alignment al{s, mirrored, 0, std::vector<std::size_t>(n)};
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t p = recovered.position(i);
            if (mirrored) p = n - 1 - p;
            p = (p + s) % n;
            al.positions[i] = p;
            al.agreement += p == reference.position(i) ? 1 : 0;
        }
        return al;
    };
    if (!shift) {
        const bool mirrored = flip && kendall_tau(recovered, reference, false) < 0.0;
        return candidate(0, mirrored);
    }
    Alignment best = candidate(0, false);
    for (bool mirrored : {false, true}) {
        if (mirrored && !flip) break;
        for (std::size_t s = 0; s < n; ++s) {
            auto al = candidate(s, mirrored);
            if (al.agreement > best.agreement) best = std::move(al);
        }
    }
    return best;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> v(count);
    for (std::size_t k = 0; k < count; ++k)
        v[k] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
    return v;
}

SimilarityMatrix threshold_matrix(const SimilarityMatrix& a, double threshold) {
    std::vector<Entry> kept;
    for (const auto& e : a.entries())
        if (e.value >= threshold) kept.push_back(e);
    return SimilarityMatrix(a.n(), std::move(kept));
}

void write_csv(std::ostream& out, const CsvTable& t) {
    out << join(t.header) << '\n';
    for (const auto& r : t.rows) out << join(r) << '\n';
}

CsvTable read_csv(std::istream& in) {
    auto split = [](const std::string& line) {
        std::vector<std::string> f;
        std::string cur;
        for (char ch : line) {
            if (ch == ',') {
                f.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        f.push_back(cur);
        return f;
    };
    CsvTable t;
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (no == 1) {
            t.header = split(line);
            continue;
        }
        auto f = split(line);
        if (f.size() != t.header.size()) throw ParseError("wrong number of CSV fields", no);
        t.rows.push_back(std::move(f));
    }
    if (no == 0) throw ParseError("empty CSV", 0);
    return t;
}

}  // namespace seriation::cli
