#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "seriation/error.hpp"
#include "seriation/generators.hpp"
#include "seriation/kendall.hpp"
#include "seriation/spectral.hpp"

using namespace seriation;

namespace {

SimilarityMatrix path_graph(std::size_t n) {
    std::vector<Entry> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1.0});
    return SimilarityMatrix(n, std::move(e));
}

SimilarityMatrix band(std::size_t n, std::size_t delta) {
    std::vector<Entry> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n && j <= i + delta; ++j) e.push_back({i, j, 1.0});
    return SimilarityMatrix(n, std::move(e));
}

Eigen::MatrixXd laplacian(const SimilarityMatrix& a) {
    Eigen::MatrixXd d = a.dense();
    d.diagonal().setZero();
    Eigen::MatrixXd l = -d;
    l.diagonal() = d.rowwise().sum();
    return l;
}

}  // namespace

TEST_CASE("fiedler vector of P3") {
    const auto f = fiedler_vector(path_graph(3));
    CHECK(f.eigenvalue == doctest::Approx(1.0));
    CHECK(f.vector[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(f.vector[1] == doctest::Approx(0.0).epsilon(1e-7));
    CHECK(f.vector[2] == doctest::Approx(-1.0 / std::sqrt(2.0)));
}

TEST_CASE("fiedler vector of paths against a Jacobi oracle") {
    for (std::size_t n = 4; n <= 30; n += 2) {
        const auto a = path_graph(n);
        const auto f = fiedler_vector(a);
        const auto ref = oracle::jacobi(laplacian(a));
        CHECK(f.eigenvalue == doctest::Approx(ref.values(1)).epsilon(1e-8));
        double dot = 0.0;
        for (std::size_t k = 0; k < n; ++k) dot += f.vector[k] * ref.vectors(static_cast<Eigen::Index>(k), 1);
        CHECK(std::abs(dot) == doctest::Approx(1.0).epsilon(1e-7));
        for (std::size_t k = 0; k + 1 < n; ++k) CHECK(f.vector[k] > f.vector[k + 1]);
    }
}

TEST_CASE("fiedler vector on a degenerate eigenspace") {
    const SimilarityMatrix k4(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {1, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}});
    const FiedlerOptions opts;
    const auto f = fiedler_vector(k4, opts);
    CHECK(f.eigenvalue == doctest::Approx(4.0));
    CHECK(f.residual <= opts.tol * 10.0);
    double sum = 0.0;
    for (double v : f.vector) sum += v;
    CHECK(std::abs(sum) < 1e-10);
}

TEST_CASE("disconnected input is refused") {
    const SimilarityMatrix a(4, {{0, 1, 1.0}, {2, 3, 1.0}});
    try {
        fiedler_vector(a);
        FAIL("expected DisconnectedError");
    } catch (const DisconnectedError& e) {
        CHECK(e.component_sizes() == std::vector<std::size_t>{2, 2});
    }
}

TEST_CASE("spectral order recovers noiseless bands") {
    CHECK(kendall_tau(spectral_order(band(40, 3)).permutation, Permutation::identity(40)) == 1.0);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto inst = gen_banded(60, 6, 0.0, seed);
        CHECK(kendall_tau(spectral_order(inst.a).permutation, inst.truth) == 1.0);
    }
}
