#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "seriation/error.hpp"
#include "seriation/solvers.hpp"

namespace seriation {

Permutation lmo_tiebreak(std::span<const double> g, std::size_t i, std::size_t j) {
    const std::size_t n = g.size();
    if (n < 2) throw DomainError("lmo_tiebreak: need n >= 2");
    if (i >= n || j >= n) throw DimensionError("lmo_tiebreak: index out of range");
    if (i == j) throw DomainError("lmo_tiebreak: i and j must differ");
    for (double v : g) {
        if (!std::isfinite(v)) throw DomainError("lmo_tiebreak: non-finite gradient");
    }

    // Unconstrained minimiser: largest g gets the smallest position.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return g[a] > g[b]; });
    std::vector<std::size_t> pos(n);
    for (std::size_t p = 0; p < n; ++p) pos[order[p]] = p;
    if (pos[i] < pos[j]) return Permutation(std::move(pos));

    // Otherwise i and j sit next to each other. Moving the pair past the
    // next remaining element changes the cost by (g_i + g_j) - 2 g̃_K, so the
    // pair goes right after every g̃ strictly above their mean.
    std::vector<std::size_t> rest;
    rest.reserve(n - 2);
    for (std::size_t e : order) {
        if (e != i && e != j) rest.push_back(e);
    }
    const double mean = 0.5 * (g[i] + g[j]);
    std::size_t k = 0;
    while (k < rest.size() && g[rest[k]] > mean) ++k;
    std::size_t p = 0;
    for (std::size_t r = 0; r < k; ++r) pos[rest[r]] = p++;
    pos[i] = p++;
    pos[j] = p++;
    for (std::size_t r = k; r < rest.size(); ++r) pos[rest[r]] = p++;
    return Permutation(std::move(pos));
}

namespace {

struct Vertex {
    std::vector<double> v;
    double weight;
};

double dot(std::span<const double> a, std::span<const double> b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Minimiser of loss(x + γ d) over γ in [0, gmax].
double line_search(const SimilarityMatrix& a, const LossKind& kind, const std::vector<double>& x,
                   const std::vector<double>& d, double slope, double gmax) {
    if (std::holds_alternative<TwoSum>(kind)) {
        // loss is 2 xᵀLx, so the curvature along d is 4 dᵀLd.
        const double curv = 4.0 * two_sum_quadratic_form(a, d);
        if (curv <= 0.0) return slope < 0.0 ? gmax : 0.0;
        return std::clamp(-slope / curv, 0.0, gmax);
    }
    std::vector<double> y(x.size()), g(x.size());
    auto derivative = [&](double gamma) {
        for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[k] + gamma * d[k];
        loss_with_gradient(a, y, kind, g);
        return dot(g, d);
    };
    if (derivative(gmax) <= 0.0) return gmax;
    double lo = 0.0, hi = gmax;
    for (int it = 0; it < 60 && hi - lo > 1e-12 * gmax; ++it) {
        const double mid = 0.5 * (lo + hi);
        (derivative(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

SolverReport fwtb(const SimilarityMatrix& a, const LossKind& kind, const FwtbOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    validate(kind);
    if (std::holds_alternative<R2Sum>(kind)) throw DomainError("fwtb: loss must be 2-SUM or Huber");
    const std::size_t n = a.n();
    if (n < 2) throw DomainError("fwtb: need at least two elements");

    std::size_t ti = 0, tj = n - 1;
    Permutation start_perm = Permutation::identity(n);
    if (opts.tiebreak == TieBreak::spectral_init) {
        start_perm = spectral_order(a, opts.fiedler).permutation;
        ti = start_perm.element_at(0);
        tj = start_perm.element_at(n - 1);
    }

    SolverReport rep;
    rep.loss_kind = kind;
    rep.permutation = start_perm;
    rep.objective = loss(a, start_perm, kind);
    rep.trace.push_back({0, rep.objective});

    std::vector<Vertex> active{{start_perm.as_vector(), 1.0}};
    std::vector<double> x = active.front().v;
    std::vector<double> grad(n), d(n);

    std::size_t it = 0;
    for (; it < opts.max_iter; ++it) {
        const double f = loss_with_gradient(a, x, kind, grad);
        const auto s = lmo_tiebreak(grad, ti, tj).as_vector();
        double gap_fw = 0.0;
        for (std::size_t k = 0; k < n; ++k) gap_fw -= grad[k] * (s[k] - x[k]);
        if (gap_fw <= opts.tol * std::max(1.0, std::abs(f))) break;

        std::size_t away = 0;
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t v = 0; v < active.size(); ++v) {
            const double val = dot(grad, active[v].v);
            if (val > worst) {
                worst = val;
                away = v;
            }
        }
        const double gap_away = worst - dot(grad, x);

        const bool toward = gap_fw >= gap_away;
        double gmax;
        if (toward) {
            for (std::size_t k = 0; k < n; ++k) d[k] = s[k] - x[k];
            gmax = 1.0;
        } else {
            for (std::size_t k = 0; k < n; ++k) d[k] = x[k] - active[away].v[k];
            const double alpha = active[away].weight;
            gmax = alpha / (1.0 - alpha);
        }
        const double slope = dot(grad, d);
        const double gamma = line_search(a, kind, x, d, slope, gmax);
        if (gamma <= 0.0) break;
        for (std::size_t k = 0; k < n; ++k) x[k] += gamma * d[k];

        if (toward) {
            for (auto& v : active) v.weight *= 1.0 - gamma;
            auto hit = std::find_if(active.begin(), active.end(), [&](const Vertex& v) { return v.v == s; });
            if (hit == active.end()) {
                active.push_back({s, gamma});
            } else {
                hit->weight += gamma;
            }
        } else {
            for (auto& v : active) v.weight *= 1.0 + gamma;
            active[away].weight -= gamma;
            if (gamma >= gmax) active[away].weight = 0.0;  // drop step
        }
        std::erase_if(active, [](const Vertex& v) { return v.weight <= 1e-12; });

        Permutation rounded = Permutation::argsort(x);
        const double score = loss(a, rounded, kind);
        if (score < rep.objective) {
            rep.objective = score;
            rep.permutation = std::move(rounded);
        }
        rep.trace.push_back({it + 1, rep.objective});
    }
    rep.iterations = it;
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::string to_string(SolverName s) {
    switch (s) {
        case SolverName::spectral: return "spectral";
        case SolverName::eta_spectral: return "eta-spectral";
        case SolverName::ubi: return "ubi";
        case SolverName::faq: return "faq";
        case SolverName::fwtb: return "fwtb";
    }
    return "?";
}

SolverName parse_solver_name(const std::string& name) {
    for (auto s : {SolverName::spectral, SolverName::eta_spectral, SolverName::ubi, SolverName::faq, SolverName::fwtb}) {
        if (name == to_string(s)) return s;
    }
    throw DomainError("unknown solver '" + name + "'");
}

}  // namespace seriation
