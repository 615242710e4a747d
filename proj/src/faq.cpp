#include <algorithm>
#include <chrono>
#include <cmath>

#include "seriation/error.hpp"
#include "seriation/linear_assignment.hpp"
#include "seriation/solvers.hpp"

namespace seriation {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

LossKind to_loss_kind(const QapKind& kind) {
    return std::visit(overloaded{
                          [](const TwoSumB&) -> LossKind { return TwoSum{}; },
                          [](const TruncatedB& t) -> LossKind { return R2Sum{t.lambda}; },
                          [](const HuberB& h) -> LossKind { return Huber{h.delta}; },
                      },
                      kind);
}

Eigen::MatrixXd toeplitz_b(const QapKind& kind, std::size_t n) {
    const LossKind lk = to_loss_kind(kind);
    validate(lk);
    const auto nn = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd b(nn, nn);
    for (Eigen::Index k = 0; k < nn; ++k) {
        for (Eigen::Index l = 0; l < nn; ++l) b(k, l) = pair_penalty(lk, static_cast<double>(k - l));
    }
    return b;
}

SolverReport faq(const SimilarityMatrix& a, const QapKind& kind, const FaqOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = a.n();
    if (n < 2) throw DimensionError("faq: need at least two elements");
    const auto nn = static_cast<Eigen::Index>(n);

    Eigen::MatrixXd am = a.dense();
    am.diagonal().setZero();  // B has a zero diagonal, so A_ii never contributes
    const Eigen::MatrixXd b = toeplitz_b(kind, n);

    SolverReport rep;
    rep.loss_kind = to_loss_kind(kind);

    Eigen::MatrixXd p = Eigen::MatrixXd::Constant(nn, nn, 1.0 / static_cast<double>(n));
    Eigen::MatrixXd apb = am * p * b;
    double f = apb.cwiseProduct(p).sum();
    double best = f;
    rep.trace.push_back({0, best});
    if (opts.on_iterate) opts.on_iterate(p);

    std::size_t it = 0;
    for (; it < opts.max_iter; ++it) {
        const Eigen::MatrixXd grad = 2.0 * apb;
        const Permutation q = linear_assignment(CostMatrix(grad), Sense::minimize);
        Eigen::MatrixXd d = -p;
        for (std::size_t i = 0; i < n; ++i) d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(q.position(i))) += 1.0;

        const double slope = grad.cwiseProduct(d).sum();  // b coefficient of the segment
        if (-slope <= opts.tol * std::max(1.0, std::abs(f))) break;
        const Eigen::MatrixXd adb = am * d * b;
        const double curv = adb.cwiseProduct(d).sum();  // a coefficient
        double step;
        if (curv > 0.0) {
            step = std::clamp(-slope / (2.0 * curv), 0.0, 1.0);
        } else {
            step = curv + slope < 0.0 ? 1.0 : 0.0;
        }
        if (step == 0.0) break;
        p += step * d;
        apb += step * adb;
        f = apb.cwiseProduct(p).sum();
        best = std::min(best, f);
        rep.trace.push_back({it + 1, best});
        if (opts.on_iterate) opts.on_iterate(p);
    }
    rep.iterations = it;

    rep.permutation = linear_assignment(CostMatrix(p), Sense::maximize);
    rep.objective = loss(a, rep.permutation, rep.loss_kind);
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace seriation
