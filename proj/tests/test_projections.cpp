#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "seriation/error.hpp"
#include "seriation/generators.hpp"
#include "seriation/projections.hpp"
#include "seriation/random.hpp"

using namespace seriation;
using Eigen::Index;
using Eigen::MatrixXd;

namespace {

MatrixXd random_symmetric(Index n, Rng& rng, bool binary = false) {
    MatrixXd m(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = i; j < n; ++j) {
            const double v = binary ? static_cast<double>(rng.below(2)) : std::floor(rng.uniform(0.0, 10.0) * 8) / 8;
            m(i, j) = m(j, i) = v;
        }
    return m;
}

MatrixXd band(Index n, Index delta) {
    MatrixXd m = MatrixXd::Zero(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            if (std::abs(i - j) <= delta) m(i, j) = 1.0;
    return m;
}

}  // namespace

TEST_CASE("strong-R membership") {
    CHECK(is_strong_r(band(8, 2)));
    CHECK(is_strong_r(gen_toeplitz_powerlaw(8, 0.5).values()));
    MatrixXd m = band(8, 2);
    m(0, 6) = m(6, 0) = 1.0;
    CHECK_FALSE(is_strong_r(m));
    CHECK_THROWS_AS(StrongRMatrix{m}, DomainError);
}

TEST_CASE("projection of a strong-R matrix is itself") {
    for (Norm norm : {Norm::l1, Norm::l2}) {
        const MatrixXd s = gen_toeplitz_powerlaw(7, 1.0).values();
        CHECK((project_strong_r(s, norm).values() - s).norm() < 1e-12);
    }
    CHECK(dist_to_strong_r(band(10, 3)) == 0.0);
    CHECK(l1_dist_to_strong_r(band(10, 3)) == 0.0);
}

TEST_CASE("l1 projection matches the breakpoint-grid oracle") {
    Rng rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const MatrixXd s = random_symmetric(4, rng);
        const MatrixXd r = project_strong_r(s, Norm::l1).values();
        CHECK(is_strong_r(r));
        CHECK(oracle::cost(r, s, true) == doctest::Approx(oracle::strong_r_l1(s)).epsilon(1e-9));
    }
}

TEST_CASE("l2 projection matches the block-partition oracle") {
    Rng rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        const MatrixXd s = random_symmetric(4, rng);
        const MatrixXd r = project_strong_r(s, Norm::l2).values();
        const MatrixXd ref = oracle::strong_r_l2(s);
        CHECK((r - ref).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(dist_to_strong_r(s) == doctest::Approx(std::sqrt(oracle::cost(ref, s, false))).epsilon(1e-9));
    }
}

TEST_CASE("l1 projection of a binary matrix is binary") {
    Rng rng(47);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<Index>(2 + rng.below(19));
        const MatrixXd r = project_strong_r(random_symmetric(n, rng, true), Norm::l1).values();
        CHECK(((r.array() == 0.0) || (r.array() == 1.0)).all());
    }
}

TEST_CASE("diagonal bounds cap the levels") {
    const auto b = DiagonalBounds::power_law(6, 1.0);
    CHECK(b.values()[0] == 1.0);
    CHECK(b.values()[2] == doctest::Approx(0.5));
    CHECK_THROWS_AS(DiagonalBounds({1.0, 2.0}), DomainError);
    MatrixXd s = MatrixXd::Constant(6, 6, 3.0);
    std::vector<double> levels;
    const MatrixXd r = project_strong_r(s, Norm::l2, b, levels).values();
    CHECK(levels.size() == 7);
    for (Index i = 0; i < 6; ++i)
        for (Index j = 0; j < 6; ++j)
            CHECK(r(i, j) <= b.values()[static_cast<std::size_t>(std::abs(i - j))] + 1e-12);
}

TEST_CASE("fixed-sum projection") {
    CHECK(project_sum_nonneg(std::vector<double>{1, 2, 3}, 6) == std::vector<double>{1, 2, 3});
    CHECK(project_sum_nonneg(std::vector<double>{0, 0}, 2) == std::vector<double>{1, 1});
    CHECK(project_sum_nonneg(std::vector<double>{3, 1}, 2) == std::vector<double>{2, 0});

    Rng rng(53);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng.below(12);
        std::vector<double> s(n);
        for (auto& v : s) v = rng.uniform(-5.0, 5.0);
        const double a = rng.uniform(0.0, 10.0);
        const auto x = project_sum_nonneg(s, a);
        const auto ref = oracle::simplex_bisection(s, a);
        for (std::size_t k = 0; k < n; ++k) CHECK(x[k] == doctest::Approx(ref[k]).epsilon(1e-9).scale(1.0));
    }
}
