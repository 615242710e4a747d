#include "seriation/projections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "seriation/error.hpp"

namespace seriation {

using Eigen::Index;
using Eigen::MatrixXd;

namespace {

void require_symmetric(const MatrixXd& m, double tol) {
    if (m.rows() != m.cols()) throw DimensionError("matrix must be square");
    if (!m.allFinite()) throw DomainError("matrix has non-finite entries");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = i + 1; j < m.cols(); ++j) {
            if (std::abs(m(i, j) - m(j, i)) > tol * scale) throw DomainError("matrix must be symmetric");
        }
    }
}

// One distinct data value with the weight it contributes to a level from
// above (entry must stay below the level) or from below.
struct Breakpoint {
    double s;
    double w_upper;  // cost w·ρ(s - λ)+ : the level caps an entry of value s
    double w_lower;  // cost w·ρ(λ - s)+ : the level floors an entry of value s
};

using Terms = std::vector<Breakpoint>;

Terms merge_terms(const Terms& a, const Terms& b) {
    Terms out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].s < b[j].s)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].s < a[i].s) {
            out.push_back(b[j++]);
        } else {
            out.push_back({a[i].s, a[i].w_upper + b[j].w_upper, a[i].w_lower + b[j].w_lower});
            ++i;
            ++j;
        }
    }
    return out;
}

Terms make_terms(std::vector<double> values, double weight, bool upper) {
    std::sort(values.begin(), values.end());
    Terms out;
    for (double v : values) {
        if (!out.empty() && out.back().s == v) {
            (upper ? out.back().w_upper : out.back().w_lower) += weight;
        } else {
            out.push_back({v, upper ? weight : 0.0, upper ? 0.0 : weight});
        }
    }
    return out;
}

// Smallest minimiser over [0, cap] of Σ w_u (s-λ)+ + w_l (λ-s)+.
double minimize_l1(const Terms& t, double cap) {
    double upper_above = 0.0;  // Σ w_u over s > λ
    for (const auto& b : t) upper_above += b.w_upper;
    double lower_below = 0.0;  // Σ w_l over s <= λ
    std::size_t k = 0;
    // Right derivative at λ = 0.
    while (k < t.size() && t[k].s <= 0.0) {
        lower_below += t[k].w_lower;
        upper_above -= t[k].w_upper;
        ++k;
    }
    if (lower_below - upper_above >= 0.0) return 0.0;
    for (; k < t.size(); ++k) {
        lower_below += t[k].w_lower;
        upper_above -= t[k].w_upper;
        if (lower_below - upper_above >= 0.0) return std::min(t[k].s, cap);
    }
    return cap;
}

// Minimiser over [0, cap] of Σ w_u (s-λ)+² + w_l (λ-s)+².
double minimize_l2(const Terms& t, double cap) {
    double wu = 0.0, su = 0.0;  // upper terms with s >= segment end
    for (const auto& b : t) {
        wu += b.w_upper;
        su += b.w_upper * b.s;
    }
    double wl = 0.0, sl = 0.0;  // lower terms with s <= segment start
    double lo = 0.0;
    std::size_t k = 0;
    while (k < t.size() && t[k].s <= 0.0) {
        wl += t[k].w_lower;
        sl += t[k].w_lower * t[k].s;
        wu -= t[k].w_upper;
        su -= t[k].w_upper * t[k].s;
        ++k;
    }
    // Derivative/2 on (lo, hi): (wl λ - sl) - (su - wu λ).
    if (wl * lo - sl - (su - wu * lo) >= 0.0) return 0.0;
    while (true) {
        const double hi = k < t.size() ? t[k].s : std::numeric_limits<double>::infinity();
        const double denom = wl + wu;
        if (denom > 0.0) {
            const double root = (sl + su) / denom;
            if (root <= hi) return std::min(std::max(root, lo), cap);
        }
        if (k == t.size()) return std::min(lo, cap);
        wl += t[k].w_lower;
        sl += t[k].w_lower * t[k].s;
        wu -= t[k].w_upper;
        su -= t[k].w_upper * t[k].s;
        lo = t[k].s;
        ++k;
    }
}

struct Block {
    std::size_t first;
    std::size_t last;
    Terms terms;
    double cap;
    double value;
};

}  // namespace

StrongRMatrix::StrongRMatrix(MatrixXd values, double tol) : values_(std::move(values)) {
    require_symmetric(values_, tol);
    if (!is_strong_r(values_, tol)) throw DomainError("matrix is not strong-R");
}

DiagonalBounds::DiagonalBounds(std::vector<double> bounds) : b_(std::move(bounds)) {
    for (std::size_t k = 0; k < b_.size(); ++k) {
        if (!(b_[k] >= 0.0)) throw DomainError("diagonal bounds must be nonnegative");
        if (k > 0 && b_[k] > b_[k - 1]) throw DomainError("diagonal bounds must be nonincreasing");
    }
}

DiagonalBounds DiagonalBounds::power_law(std::size_t n, double gamma) {
    if (!(gamma > 0.0)) throw DomainError("power-law exponent must be positive");
    std::vector<double> b(n + 1);
    b[0] = 1.0;
    for (std::size_t k = 1; k <= n; ++k) b[k] = std::pow(static_cast<double>(k), -gamma);
    return DiagonalBounds(std::move(b));
}

bool is_strong_r(const MatrixXd& m, double tol) {
    require_symmetric(m, tol);
    const Index n = m.rows();
    double prev_min = std::numeric_limits<double>::infinity();
    for (Index d = 0; d < n; ++d) {
        double mx = -std::numeric_limits<double>::infinity();
        double mn = std::numeric_limits<double>::infinity();
        for (Index i = 0; i + d < n; ++i) {
            mx = std::max(mx, m(i, i + d));
            mn = std::min(mn, m(i, i + d));
        }
        if (mx > prev_min + tol) return false;
        prev_min = mn;
    }
    return true;
}

StrongRMatrix project_strong_r(const MatrixXd& s, Norm norm, const std::optional<DiagonalBounds>& bounds,
                               std::vector<double>& levels) {
    require_symmetric(s, 1e-12);
    const Index n = s.rows();
    const auto nn = static_cast<std::size_t>(n);
    if (n > 0 && s.minCoeff() < 0.0) throw DomainError("project_strong_r: negative entries");

    const double smax = n > 0 ? s.maxCoeff() : 0.0;
    std::vector<double> cap(nn + 1, smax);
    if (bounds) {
        const auto b = bounds->values();
        for (std::size_t k = 0; k < cap.size() && k < b.size(); ++k) cap[k] = b[k];
        // Bounds past the supplied length inherit the last one (nonincreasing).
        for (std::size_t k = b.size(); k < cap.size() && !b.empty(); ++k) cap[k] = b.back();
    }

    // Level k caps diagonal k and floors diagonal k-1.
    std::vector<Block> stack;
    stack.reserve(nn + 1);
    for (std::size_t k = 0; k <= nn; ++k) {
        Terms terms;
        if (k < nn) {
            std::vector<double> vals;
            for (Index i = 0; i + static_cast<Index>(k) < n; ++i) vals.push_back(s(i, i + static_cast<Index>(k)));
            terms = make_terms(std::move(vals), k == 0 ? 1.0 : 2.0, true);
        }
        if (k > 0) {
            std::vector<double> vals;
            const Index d = static_cast<Index>(k - 1);
            for (Index i = 0; i + d < n; ++i) vals.push_back(s(i, i + d));
            terms = merge_terms(terms, make_terms(std::move(vals), k == 1 ? 1.0 : 2.0, false));
        }
        Block blk{k, k, std::move(terms), cap[k], 0.0};
        blk.value = norm == Norm::l1 ? minimize_l1(blk.terms, blk.cap) : minimize_l2(blk.terms, blk.cap);
        stack.push_back(std::move(blk));
        while (stack.size() >= 2 && stack[stack.size() - 2].value < stack.back().value) {
            Block top = std::move(stack.back());
            stack.pop_back();
            Block& prev = stack.back();
            prev.last = top.last;
            prev.terms = merge_terms(prev.terms, top.terms);
            prev.cap = std::min(prev.cap, top.cap);
            prev.value = norm == Norm::l1 ? minimize_l1(prev.terms, prev.cap) : minimize_l2(prev.terms, prev.cap);
        }
    }

    levels.assign(nn + 1, 0.0);
    for (const auto& blk : stack) {
        for (std::size_t k = blk.first; k <= blk.last; ++k) levels[k] = blk.value;
    }

    MatrixXd r(n, n);
    for (Index d = 0; d < n; ++d) {
        const double hi = levels[static_cast<std::size_t>(d)];
        const double lo = levels[static_cast<std::size_t>(d) + 1];
        for (Index i = 0; i + d < n; ++i) {
            const double v = std::clamp(s(i, i + d), lo, hi);
            r(i, i + d) = v;
            r(i + d, i) = v;
        }
    }
    return StrongRMatrix(std::move(r), 1e-12);
}

StrongRMatrix project_strong_r(const MatrixXd& s, Norm norm, const std::optional<DiagonalBounds>& bounds) {
    std::vector<double> levels;
    return project_strong_r(s, norm, bounds, levels);
}

double dist_to_strong_r(const MatrixXd& m) {
    return (m - project_strong_r(m, Norm::l2).values()).norm();
}

double l1_dist_to_strong_r(const MatrixXd& m) {
    return (m - project_strong_r(m, Norm::l1).values()).cwiseAbs().sum();
}

std::vector<double> project_sum_nonneg(std::span<const double> s, double a) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("project_sum_nonneg: a must be >= 0");
    const std::size_t p = s.size();
    if (p == 0) {
        if (a > 0.0) throw DomainError("project_sum_nonneg: empty vector cannot sum to a > 0");
        return {};
    }
    for (double v : s) {
        if (!std::isfinite(v)) throw DomainError("project_sum_nonneg: non-finite entry");
    }
    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return s[i] > s[j]; });

    std::size_t k = p;
    double prefix = 0.0;
    double kept_prefix = 0.0;
    for (std::size_t t = 0; t < p; ++t) {
        prefix += s[order[t]];
        const double candidate = s[order[t]] + (a - prefix) / static_cast<double>(t + 1);
        if (candidate < 0.0) {
            k = t;
            break;
        }
        kept_prefix = prefix;
    }
    const double shift = (a - kept_prefix) / static_cast<double>(k);
    std::vector<double> x(p, 0.0);
    for (std::size_t t = 0; t < k; ++t) x[order[t]] = std::max(0.0, s[order[t]] + shift);
    return x;
}

}  // namespace seriation
