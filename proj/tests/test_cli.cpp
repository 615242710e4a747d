#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli/cli.hpp"
#include "cli/commands.hpp"
#include "seriation/error.hpp"
#include "seriation/generators.hpp"
#include "seriation/io.hpp"
#include "seriation/kendall.hpp"

using namespace seriation;
using namespace seriation::cli;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

/// Fresh scratch directory per test case.
struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("seriation_cli_" + name)) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator()(const std::string& f) const { return (dir / f).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

CsvTable csv(const std::string& text) {
    std::istringstream in(text);
    return read_csv(in);
}

std::string field(const CsvTable& t, std::size_t row, const std::string& name) {
    for (std::size_t k = 0; k < t.header.size(); ++k)
        if (t.header[k] == name) return t.rows.at(row).at(k);
    FAIL("missing column " << name);
    return {};
}

}  // namespace

TEST_CASE("cli: spectral recovers a clean band") {
    Scratch s("clean");
    REQUIRE(run({"--seed", "9", "--quiet", "gen", "banded", "--n", "80", "--delta", "6", "--out", s("b")}).code == 0);
    const auto r = run({"reorder", s("b.sim"), "--solver", "spectral", "-o", s("p.perm")});
    REQUIRE(r.code == Exit::ok);
    CHECK(json::parse(r.out)["solver"] == "spectral");
    const auto e = run({"eval", s("b.sim"), s("p.perm"), "--truth", s("b.truth.perm")});
    REQUIRE(e.code == Exit::ok);
    CHECK(std::stod(field(csv(e.out), 0, "kendall_tau")) == 1.0);
}

TEST_CASE("cli: malformed input exits 2 and names the line") {
    Scratch s("bad");
    std::ofstream(s("bad.sim")) << "3 2\n0 1 1.0\n3 x 1.0\n";
    const auto r = run({"reorder", s("bad.sim"), "-o", s("p.perm")});
    CHECK(r.code == Exit::parse_error);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK_FALSE(fs::exists(s("p.perm")));
}

TEST_CASE("cli: disconnected input exits 3, usage errors exit 1") {
    Scratch s("dis");
    std::ofstream(s("d.sim")) << "4 2\n0 1 1\n2 3 1\n";
    CHECK(run({"reorder", s("d.sim"), "-o", s("p.perm")}).code == Exit::disconnected);
    CHECK(run({"nonsense"}).code == Exit::usage);
    CHECK(run({"reorder", s("d.sim")}).code == Exit::usage);
    CHECK(run({"reorder", s("d.sim"), "-o", s("p"), "--solver", "nope"}).code == Exit::usage);
}

TEST_CASE("cli: reorder objective agrees with eval") {
    Scratch s("consistency");
    run({"--seed", "4", "--quiet", "gen", "banded", "--n", "70", "--delta", "7", "--s-ratio", "1", "--out", s("b")});
    for (const auto& [solver, column] : std::vector<std::pair<std::string, std::string>>{
             {"eta-spectral", "huber"}, {"spectral", "two_sum"}, {"ubi", "huber"}}) {
        const auto r = run({"reorder", s("b.sim"), "--solver", solver, "-o", s("p.perm")});
        REQUIRE(r.code == 0);
        const double objective = json::parse(r.out)["objective"];
        const auto e = run({"eval", s("b.sim"), s("p.perm")});
        CHECK(std::stod(field(csv(e.out), 0, column)) == doctest::Approx(objective).epsilon(1e-9));
    }
    const auto r = run({"reorder", s("b.sim"), "--solver", "faq", "--loss", "r2sum", "--lambda", "49", "-o", s("q.perm")});
    REQUIRE(r.code == 0);
    const auto e = run({"eval", s("b.sim"), s("q.perm"), "--delta", "7"});
    CHECK(std::stod(field(csv(e.out), 0, "r2sum")) == doctest::Approx(double(json::parse(r.out)["objective"])));
}

TEST_CASE("cli: distance to strong-R vanishes on the unshuffled band") {
    Scratch s("dist");
    run({"--seed", "2", "--quiet", "gen", "banded", "--n", "40", "--delta", "4", "--out", s("b")});
    const auto e = run({"eval", s("b.sim"), s("b.truth.perm"), "--dist2r", "--truth", s("b.truth.perm")});
    const auto t = csv(e.out);
    CHECK(std::stod(field(t, 0, "dist2r")) == 0.0);
    CHECK(std::stod(field(t, 0, "kendall_tau")) == 1.0);
}

TEST_CASE("cli: bench is deterministic and writes one row per run") {
    Scratch s("bench");
    std::ofstream(s("spec.json")) << R"({"n":[50],"delta":[5],"s_ratio":[1.0],"solvers":["eta-spectral"],)"
                                  << R"("repetitions":1,"seed":3,"dist2r":true})";
    REQUIRE(run({"--quiet", "bench", s("spec.json"), "--long", s("l1.csv"), "--aggregate", s("a1.csv")}).code == 0);
    REQUIRE(run({"--threads", "2", "--quiet", "bench", s("spec.json"), "--long", s("l2.csv"), "--aggregate",
                 s("a2.csv")})
                .code == 0);
    const auto t = csv(slurp(s("l1.csv")));
    REQUIRE(t.rows.size() == 1);
    CHECK(field(t, 0, "error").empty());
    CHECK(std::stod(field(t, 0, "kendall_tau")) > 0.5);
    CHECK(slurp(s("l1.csv")) == slurp(s("l2.csv")));
    CHECK(slurp(s("a1.csv")) == slurp(s("a2.csv")));
    CHECK(field(csv(slurp(s("a1.csv"))), 0, "count") == "1");

    std::ofstream(s("broken.json")) << R"({"n":[50]})";
    CHECK(run({"bench", s("broken.json")}).code == Exit::parse_error);
}

TEST_CASE("cli: CSV round trip") {
    CsvTable t{{"a", "b", "c"}, {{"1", "", "x"}, {"2.5", "3", ""}}};
    std::ostringstream out;
    write_csv(out, t);
    const auto back = csv(out.str());
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);
    CHECK_THROWS_AS(csv("a,b\n1\n"), ParseError);
}

TEST_CASE("cli: grid-threshold") {
    Scratch s("grid");
    // weight 2 inside the band, weight 1 on the outliers
    Rng rng(77);
    const std::size_t n = 60, delta = 5;
    std::vector<std::size_t> order(n);
    for (std::size_t k = 0; k < n; ++k) order[k] = k;
    rng.shuffle(order);
    const Permutation shuffle(order);
    const auto b = gen_band_with_outliers(n, delta, 60, rng);
    std::vector<Entry> e;
    for (const auto& x : b.entries()) {
        const auto gap = x.i > x.j ? x.i - x.j : x.j - x.i;
        e.push_back({x.i, x.j, gap <= delta ? 2.0 : 1.0});
    }
    write_similarity(fs::path(s("w.sim")), SimilarityMatrix(n, std::move(e)).permuted(shuffle));
    write_permutation(fs::path(s("truth.perm")), shuffle.inverse());

    const auto one = run({"grid-threshold", s("w.sim"), "--lo", "0.5", "--truth", s("truth.perm")});
    REQUIRE(one.code == 0);
    CHECK(csv(one.out).rows.size() == 1);

    const auto r = run({"grid-threshold", s("w.sim"), "--lo", "0.5", "--hi", "2.5", "--count", "5", "--truth",
                        s("truth.perm"), "-o", s("best.perm"), "--quiet"});
    REQUIRE(r.code == 0);
    const auto t = csv(r.out);
    REQUIRE(t.rows.size() == 5);
    CHECK(field(t, 4, "status") == "disconnected");
    double best_tau = 0.0;
    for (std::size_t k = 0; k < t.rows.size(); ++k)
        if (field(t, k, "status") == "ok") best_tau = std::max(best_tau, std::stod(field(t, k, "kendall_tau")));
    const double chosen = kendall_tau(read_permutation(fs::path(s("best.perm"))), shuffle.inverse());
    CHECK(chosen >= best_tau - 0.05);

    CHECK(run({"grid-threshold", s("w.sim"), "--lo", "5", "--quiet"}).code == Exit::disconnected);
}

TEST_CASE("cli: dupli with unit counts returns a permutation") {
    Scratch s("dupli");
    run({"--seed", "6", "--quiet", "gen", "banded", "--n", "40", "--delta", "4", "--out", s("b")});
    write_counts(fs::path(s("ones.counts")), DuplicationCounts::ones(40));
    const auto r = run({"dupli", s("b.sim"), s("ones.counts"), "--assign-out", s("z.assign")});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(double(j["relative_residual"]) <= 1e-12);
    const auto z = read_assignment(fs::path(s("z.assign")));
    std::vector<int> seen(40, 0);
    for (const auto& list : z.lists()) {
        REQUIRE(list.size() == 1);
        ++seen[list[0]];
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int v) { return v == 1; }));
}

TEST_CASE("cli: plot alignment") {
    const std::size_t n = 12;
    const auto ref = Permutation::identity(n);
    CHECK(align(ref, ref, true, true).agreement == n);
    const auto al = align(ref.flipped(), ref, true, false);
    CHECK(al.flipped);
    CHECK(al.agreement == n);
    std::vector<std::size_t> order(n);
    for (std::size_t k = 0; k < n; ++k) order[k] = (k + 3) % n;
    const auto shifted = Permutation(order);
    const auto sh = align(shifted, ref, false, true);
    CHECK(sh.agreement == n);
    CHECK((shifted.position(0) + sh.shift) % n == 0);

    Scratch s("plot");
    write_permutation(fs::path(s("p.perm")), shifted);
    write_permutation(fs::path(s("t.perm")), ref);
    REQUIRE(run({"plot", "scatter", s("p.perm"), s("t.perm"), "--align-shift", "-o", s("x.svg")}).code == 0);
    const auto svg = slurp(s("x.svg"));
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
}
