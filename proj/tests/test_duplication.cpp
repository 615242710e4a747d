#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "seriation/duplication.hpp"
#include "seriation/error.hpp"
#include "seriation/generators.hpp"
#include "seriation/kendall.hpp"

using namespace seriation;
using Eigen::MatrixXd;

namespace {

MatrixXd worked_a() {
    MatrixXd a(3, 3);
    a << 6, 3, 3, 3, 3, 2, 3, 2, 3;
    return a;
}

MatrixXd worked_s() {
    MatrixXd s(4, 4);
    s << 3, 2, 1, 0, 2, 3, 2, 1, 1, 2, 3, 2, 0, 1, 2, 3;
    return s;
}

// In one dimension the sorted matching is optimal for |p - q| costs.
double sorted_gap(std::vector<std::size_t> a, std::vector<std::size_t> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(static_cast<double>(a[k]) - static_cast<double>(b[k]));
    return s / static_cast<double>(a.size());
}

}  // namespace

TEST_CASE("assignment matrix validation and moves") {
    const DuplicationCounts c({2, 1, 1});
    CHECK(c.total() == 4);
    const auto z = AssignmentMatrix::consecutive(c);
    CHECK(z.lists() == std::vector<std::vector<std::size_t>>{{0, 1}, {2}, {3}});
    CHECK(z.bin_of() == std::vector<std::size_t>{0, 0, 1, 2});
    CHECK(z.flipped().lists() == std::vector<std::vector<std::size_t>>{{2, 3}, {1}, {0}});
    CHECK(z.permuted(Permutation({3, 2, 1, 0})) == z.flipped());
    CHECK(z.dense().colwise().sum().isOnes());
    CHECK_THROWS(AssignmentMatrix(c, {{0, 1}, {1}, {3}}));
    CHECK_THROWS(AssignmentMatrix(c, {{0}, {1}, {2, 3}}));
    CHECK_THROWS(DuplicationCounts({1, 0}));
}

TEST_CASE("worked example: the hidden matrix compresses to the observation") {
    const DuplicationCounts c({2, 1, 1});
    const AssignmentMatrix z(c, {{0, 3}, {1}, {2}});
    CHECK(compress(z, worked_s()) == worked_a());
}

TEST_CASE("worked example: uniform expansion") {
    const DuplicationCounts c({2, 1, 1});
    const auto z0 = AssignmentMatrix::consecutive(c);
    const MatrixXd s0 = init_expand(SimilarityMatrix::from_dense(worked_a()), c, z0);
    CHECK(s0(0, 0) == 1.5);
    CHECK(s0(0, 1) == 1.5);
    CHECK(s0(1, 2) == 1.5);
    CHECK(s0(2, 3) == 2.0);
    CHECK(compress(z0, s0).isApprox(worked_a()));
}

TEST_CASE("no duplication is plain seriation") {
    const auto inst = gen_banded(12, 2, 1.0, 3);
    const auto c = DuplicationCounts::ones(12);
    const auto z = AssignmentMatrix::consecutive(c);
    CHECK(init_expand(inst.a, c, z) == inst.a.dense());
    CHECK(compress(z, inst.a.dense()) == inst.a.dense());
    MatrixXd noisy = inst.a.dense().array() + 0.25;
    CHECK(project_dupli_constraints(noisy, z, inst.a) == inst.a.dense());
}

TEST_CASE("duplication constraint projection") {
    const DuplicationCounts c({2, 1});
    const AssignmentMatrix z = AssignmentMatrix::consecutive(c);
    MatrixXd a(2, 2);
    a << 4, 2, 2, 1;
    const auto sa = SimilarityMatrix::from_dense(a);

    MatrixXd feasible(3, 3);
    feasible << 1, 1, 1, 1, 1, 1, 1, 1, 1;
    CHECK(project_dupli_constraints(feasible, z, sa).isApprox(feasible));

    MatrixXd s(3, 3);
    s << 1, 1, 3, 1, 1, 1, 3, 1, 1;
    const MatrixXd p = project_dupli_constraints(s, z, sa);
    CHECK(p(0, 2) == doctest::Approx(2.0));
    CHECK(p(1, 2) == doctest::Approx(0.0));
    CHECK(p(2, 0) == p(0, 2));
    CHECK(compress(z, p).isApprox(a));
}

TEST_CASE("mean assignment distance") {
    const DuplicationCounts c({4, 17});
    const std::vector<std::size_t> i_set{0, 7, 10, 19}, j_set{2, 7, 12, 16};
    auto rest = [](const std::vector<std::size_t>& s) {
        std::vector<std::size_t> r;
        for (std::size_t k = 0; k < 21; ++k)
            if (std::find(s.begin(), s.end(), k) == s.end()) r.push_back(k);
        return r;
    };
    const AssignmentMatrix z1(c, {i_set, rest(i_set)}), z2(c, {j_set, rest(j_set)});
    const double d0 = sorted_gap(i_set, j_set);
    CHECK(d0 == doctest::Approx(1.75));
    const double d1 = sorted_gap(rest(i_set), rest(j_set));
    const auto m = mean_assignment_distance(z1, z2);
    CHECK(m.mean == doctest::Approx(0.5 * (d0 + d1)));
    CHECK(m.stddev == doctest::Approx(0.5 * std::abs(d0 - d1)));

    const auto zero = mean_assignment_distance(z1, z1);
    CHECK(zero.mean == 0.0);
    CHECK(zero.stddev == 0.0);
    CHECK(zero.median == 0.0);
    CHECK(aligned_assignment_distance(z1, z1.flipped()).mean == 0.0);
}

TEST_CASE("relative Frobenius distance is flip aligned") {
    const MatrixXd s = worked_s();
    CHECK(relative_frobenius_aligned(s, s) == 0.0);
    CHECK(relative_frobenius_aligned(s, s.reverse()) == 0.0);
}

TEST_CASE("alternating projections reach the constraint set") {
    const SimilarityMatrix a = SimilarityMatrix::from_dense(worked_a());
    const DuplicationCounts c({2, 1, 1});
    for (InnerSolver inner : {InnerSolver::spectral, InnerSolver::eta_spectral, InnerSolver::h_ubi}) {
        DupliConfig cfg;
        cfg.inner = inner;
        const auto r = alt_proj_dupli(a, c, cfg);
        CHECK(r.feasibility_residual <= 1e-12);
        CHECK(compress(r.z, r.s).isApprox(worked_a()));
        CHECK((r.s.array() >= 0.0).all());
    }
}

TEST_CASE("alternating projections without duplication recover a clean band") {
    const auto inst = gen_banded(40, 4, 0.0, 9);
    const auto r = alt_proj_dupli(inst.a, DuplicationCounts::ones(40));
    std::vector<std::size_t> pos(40);
    for (std::size_t i = 0; i < 40; ++i) pos[i] = r.z.list(i)[0];
    CHECK(kendall_tau(Permutation(pos), inst.truth) == 1.0);
    CHECK(r.converged_by == DupliStop::z_fixed_point);
}

TEST_CASE("inner solver names round trip") {
    for (auto s : {InnerSolver::spectral, InnerSolver::eta_spectral, InnerSolver::h_ubi})
        CHECK(parse_inner_solver(to_string(s)) == s);
    CHECK_THROWS(parse_inner_solver("faq"));
}
