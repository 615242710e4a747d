#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "seriation/bandwidth.hpp"
#include "seriation/error.hpp"
#include "seriation/kendall.hpp"
#include "seriation/linear_assignment.hpp"
#include "seriation/loss.hpp"
#include "seriation/random.hpp"
#include "seriation/similarity_matrix.hpp"

using namespace seriation;
using Eigen::MatrixXd;

namespace {

SimilarityMatrix random_matrix(std::size_t n, double density, Rng& rng) {
    std::vector<Entry> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (rng.uniform() < density) e.push_back({i, j, 0.1 + rng.uniform()});
    return SimilarityMatrix(n, std::move(e));
}

Permutation random_permutation(std::size_t n, Rng& rng) {
    auto v = oracle::iota(n);
    rng.shuffle(v);
    return Permutation(std::move(v));
}

SimilarityMatrix triangle_ones() { return SimilarityMatrix(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}); }

}  // namespace

TEST_CASE("permutation basics") {
    const Permutation p({2, 0, 1});
    CHECK(p.position(0) == 2);
    CHECK(p.element_at(2) == 0);
    CHECK(p.inverse().compose(p) == Permutation::identity(3));
    CHECK(p.flipped().position(0) == 0);
    CHECK(Permutation::from_order(std::vector<std::size_t>{1, 2, 0}) == p);
    CHECK_THROWS_AS(Permutation({0, 0, 1}), DomainError);
    const std::vector<double> v{0.5, -1.0, 0.5};
    CHECK(Permutation::argsort(v) == Permutation({1, 0, 2}));
}

TEST_CASE("similarity matrix storage") {
    const SimilarityMatrix a(3, {{1, 0, 2.0}, {2, 2, 1.0}});
    CHECK(a.entries().size() == 2);
    CHECK(a.entries()[0].i == 0);
    CHECK(a.nnz() == 3);
    CHECK(a.dense()(1, 0) == 2.0);
    CHECK_THROWS_AS(SimilarityMatrix(2, {{0, 1, -1.0}}), DomainError);
    CHECK_THROWS(SimilarityMatrix(2, {{0, 1, 1.0}, {1, 0, 1.0}}));
    CHECK_FALSE(a.is_connected());
    CHECK(a.component_sizes() == std::vector<std::size_t>{2, 1});

    Rng rng(5);
    const auto b = random_matrix(7, 0.5, rng);
    const auto p = random_permutation(7, rng);
    const MatrixXd d = b.dense(), dp = b.permuted(p).dense();
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j)
            CHECK(dp(static_cast<Eigen::Index>(p.position(i)), static_cast<Eigen::Index>(p.position(j))) ==
                  d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    CHECK(SimilarityMatrix::from_dense(d).dense() == d);
}

TEST_CASE("huber penalty") {
    CHECK(huber(0.5, 1.0) == doctest::Approx(0.25));
    CHECK(huber(2.0, 1.0) == doctest::Approx(3.0));
    CHECK(huber(3.0, 3.0) == doctest::Approx(9.0));
    CHECK(huber(-2.0, 1.0) == doctest::Approx(3.0));
    CHECK_THROWS_AS(huber(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(huber(NAN, 1.0), DomainError);
}

TEST_CASE("loss hand examples") {
    const auto a = triangle_ones();
    const auto id = Permutation::identity(3);
    CHECK(loss(a, id, TwoSum{}) == doctest::Approx(12.0));
    CHECK(loss(a, id, R2Sum{1.0}) == doctest::Approx(6.0));

    const SimilarityMatrix path(3, {{0, 1, 1.0}, {1, 2, 1.0}});
    const std::vector<double> x{0, 1, 2};
    CHECK(two_sum_quadratic_form(path, x) == doctest::Approx(2.0));
    const std::vector<double> c(3, 4.0);
    CHECK(two_sum_quadratic_form(path, c) == 0.0);
}

TEST_CASE("loss against a direct double sum") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_matrix(5, 0.7, rng);
        std::vector<double> x(5);
        for (auto& v : x) v = rng.uniform(-3.0, 3.0);
        const MatrixXd d = a.dense();
        double direct = 0.0;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                if (i != j) direct += d(i, j) * (x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)]) *
                                      (x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)]);
        CHECK(loss(a, x, TwoSum{}) == doctest::Approx(direct).epsilon(1e-12));
        // loss counts ordered pairs, the quadratic form unordered ones
        CHECK(loss(a, x, TwoSum{}) == doctest::Approx(2.0 * two_sum_quadratic_form(a, x)).epsilon(1e-12));
    }
}

TEST_CASE("losses are exactly flip invariant") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_matrix(9, 0.5, rng);
        const auto p = random_permutation(9, rng);
        for (const LossKind k : {LossKind{TwoSum{}}, LossKind{R2Sum{4.0}}, LossKind{Huber{2.0}}}) {
            CHECK(loss(a, p, k) == loss(a, p.flipped(), k));
        }
    }
}

TEST_CASE("loss gradients match finite differences") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_matrix(12, 0.5, rng);
        std::vector<double> x(12);
        for (auto& v : x) v = rng.uniform(0.0, 11.0);
        for (const LossKind k : {LossKind{TwoSum{}}, LossKind{Huber{2.5}}}) {
            std::vector<double> g(12);
            loss_with_gradient(a, x, k, g);
            const auto fd = oracle::fd_gradient([&](const std::vector<double>& y) { return loss(a, y, k); }, x, 1e-6);
            double num = 0, den = 0;
            for (std::size_t q = 0; q < 12; ++q) num += (g[q] - fd[q]) * (g[q] - fd[q]), den += fd[q] * fd[q];
            CHECK(std::sqrt(num / den) < 1e-5);
        }
    }
}

TEST_CASE("kendall tau") {
    CHECK(kendall_tau(Permutation({0, 2, 1, 3}), Permutation::identity(4), false) == doctest::Approx(4.0 / 6.0));
    CHECK(kendall_tau(Permutation::identity(5).flipped(), Permutation::identity(5)) == 1.0);
    CHECK(kendall_tau(Permutation::identity(5).flipped(), Permutation::identity(5), false) == -1.0);
    const std::vector<std::size_t> v{3, 1, 2, 0};
    CHECK(count_inversions(v) == 5);

    Rng rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng.below(6);
        const auto a = random_permutation(n, rng), b = random_permutation(n, rng);
        const std::vector<std::size_t> fa(a.forward().begin(), a.forward().end());
        const std::vector<std::size_t> fb(b.forward().begin(), b.forward().end());
        const double tau = oracle::kendall(fa, fb);
        CHECK(kendall_tau(a, b, false) == doctest::Approx(tau).epsilon(1e-14));
        CHECK(kendall_tau(a, b) == doctest::Approx(std::abs(tau)).epsilon(1e-14));
    }
}

TEST_CASE("linear assignment") {
    MatrixXd c(2, 2);
    c << 4, 1, 2, 3;
    const auto p = linear_assignment(CostMatrix(c));
    CHECK(p == Permutation({1, 0}));
    CHECK(assignment_cost(CostMatrix(c), p) == 3.0);

    MatrixXd favour = MatrixXd::Constant(4, 4, 5.0);
    favour.diagonal().setZero();
    CHECK(linear_assignment(CostMatrix(favour)) == Permutation::identity(4));
    CHECK_THROWS_AS(CostMatrix(MatrixXd(2, 3)), DimensionError);

    Rng rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<Eigen::Index>(1 + rng.below(7));
        MatrixXd m(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) m(i, j) = std::floor(rng.uniform(-5.0, 20.0) * 4.0) / 4.0;
        const CostMatrix cm(m);
        CHECK(assignment_cost(cm, linear_assignment(cm)) == doctest::Approx(oracle::brute_assignment(m, false)));
        CHECK(assignment_cost(cm, linear_assignment(cm, Sense::maximize)) ==
              doctest::Approx(oracle::brute_assignment(m, true)));
    }
}

TEST_CASE("bandwidth estimate") {
    CHECK(band_nonzeros(100, 10) == 1990);
    std::vector<Entry> band;
    for (std::size_t i = 0; i < 100; ++i)
        for (std::size_t j = i; j < 100 && j <= i + 10; ++j) band.push_back({i, j, 1.0});
    CHECK(estimate_bandwidth(SimilarityMatrix(100, band)).delta == 10);
    CHECK(estimate_bandwidth(SimilarityMatrix(100, band)).lambda == 100.0);

    std::vector<Entry> diag;
    for (std::size_t i = 0; i < 6; ++i) diag.push_back({i, i, 1.0});
    CHECK(estimate_bandwidth(SimilarityMatrix(6, diag)).delta == 1);

    // band_nonzeros(100, 11) = 2168: 50 outliers, counted once or twice, land on 11
    CHECK(band_nonzeros(100, 11) == 2168);
    CHECK(estimate_bandwidth(100, 2040).delta == 11);
    CHECK(estimate_bandwidth(100, 2090).delta == 11);
}
