#include "seriation/loss.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "seriation/error.hpp"

namespace seriation {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

void validate(const LossKind& kind) {
    std::visit(overloaded{
                   [](const TwoSum&) {},
                   [](const R2Sum& r) {
                       if (!(r.lambda > 0.0) || !std::isfinite(r.lambda)) {
                           throw DomainError("R2Sum lambda must be positive");
                       }
                   },
                   [](const Huber& h) {
                       if (!(h.delta >= 1.0) || !std::isfinite(h.delta)) {
                           throw DomainError("Huber delta must be >= 1");
                       }
                   },
               },
               kind);
}

std::string to_string(const LossKind& kind) {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const TwoSum&) { os << "2sum"; },
                   [&](const R2Sum& r) { os << "r2sum(" << r.lambda << ")"; },
                   [&](const Huber& h) { os << "huber(" << h.delta << ")"; },
               },
               kind);
    return os.str();
}

double huber(double x, double delta) {
    if (!std::isfinite(x) || !(delta > 0.0)) throw DomainError("huber: need finite x and delta > 0");
    const double ax = std::abs(x);
    return ax <= delta ? x * x : delta * (2.0 * ax - delta);
}

double huber_derivative(double x, double delta) {
    if (std::abs(x) <= delta) return 2.0 * x;
    return x > 0 ? 2.0 * delta : -2.0 * delta;
}

double pair_penalty(const LossKind& kind, double gap) {
    return std::visit(overloaded{
                          [&](const TwoSum&) { return gap * gap; },
                          [&](const R2Sum& r) { return std::min(r.lambda, gap * gap); },
                          [&](const Huber& h) { return huber(gap, h.delta); },
                      },
                      kind);
}

double pair_penalty_derivative(const LossKind& kind, double gap) {
    return std::visit(overloaded{
                          [&](const TwoSum&) { return 2.0 * gap; },
                          [&](const R2Sum& r) { return gap * gap < r.lambda ? 2.0 * gap : 0.0; },
                          [&](const Huber& h) { return huber_derivative(gap, h.delta); },
                      },
                      kind);
}

double loss_with_gradient(const SimilarityMatrix& a, std::span<const double> x, const LossKind& kind,
                          std::span<double> grad) {
    if (x.size() != a.n() || grad.size() != a.n()) throw DimensionError("loss_with_gradient: size mismatch");
    std::fill(grad.begin(), grad.end(), 0.0);
    double total = 0.0;
    for (const auto& e : a.entries()) {
        if (e.i == e.j) continue;
        const double gap = x[e.i] - x[e.j];
        total += 2.0 * e.value * pair_penalty(kind, gap);
        // Both ordered pairs (i, j) and (j, i) contribute the same derivative.
        const double g = 2.0 * e.value * pair_penalty_derivative(kind, gap);
        grad[e.i] += g;
        grad[e.j] -= g;
    }
    return total;
}

double loss(const SimilarityMatrix& a, std::span<const double> x, const LossKind& kind) {
    if (x.size() != a.n()) throw DimensionError("loss: size mismatch");
    double total = 0.0;
    for (const auto& e : a.entries()) {
        if (e.i == e.j) continue;
        total += 2.0 * e.value * pair_penalty(kind, x[e.i] - x[e.j]);
    }
    return total;
}

double loss(const SimilarityMatrix& a, const Permutation& perm, const LossKind& kind) {
    if (perm.size() != a.n()) throw DimensionError("loss: permutation size mismatch");
    const auto x = perm.as_vector();
    return loss(a, std::span<const double>(x), kind);
}

double two_sum_quadratic_form(const SimilarityMatrix& a, std::span<const double> x) {
    if (x.size() != a.n()) throw DimensionError("quadratic form: size mismatch");
    std::vector<double> ax(a.n());
    a.multiply_offdiagonal(x, ax);
    const auto& d = a.degrees();
    double total = 0.0;
    for (std::size_t i = 0; i < a.n(); ++i) total += x[i] * (d[i] * x[i] - ax[i]);
    return total;
}

}  // namespace seriation
