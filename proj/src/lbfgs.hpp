#pragma once

#include <cmath>
#include <cstddef>
#include <deque>
#include <span>
#include <vector>
#include <algorithm>

#include <Eigen/Dense>

namespace seriation::detail {

struct LbfgsResult {
    Eigen::VectorXd x;
    double f = 0.0;
    double grad_norm = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    bool line_search_failed = false;
};

/// Limited-memory BFGS with backtracking Armijo line search.
///
/// `fg(x, grad)` returns f(x) and fills grad. Stops when ‖∇f‖ <= grad_tol ·
/// max(1, ‖∇f(x0)‖), when f stalls at machine precision, or after max_iter.
template <typename F>
LbfgsResult lbfgs(F&& fg, Eigen::VectorXd x, std::size_t memory, double grad_tol, std::size_t max_iter) {
    const Eigen::Index d = x.size();
    auto eval = [&](const Eigen::VectorXd& p, Eigen::VectorXd& g) {
        g.resize(d);
        return fg(std::span<const double>(p.data(), static_cast<std::size_t>(d)),
                  std::span<double>(g.data(), static_cast<std::size_t>(d)));
    };

    LbfgsResult out;
    Eigen::VectorXd g;
    double f = eval(x, g);
    const double target = grad_tol * std::max(1.0, g.norm());
    std::deque<Eigen::VectorXd> s_hist, y_hist;
    std::deque<double> rho_hist;
    Eigen::VectorXd x_new, g_new;

    for (std::size_t it = 0; it < max_iter; ++it) {
        out.iterations = it;
        if (g.norm() <= target) {
            out.converged = true;
            break;
        }
        // Two-loop recursion.
        Eigen::VectorXd q = g;
        std::vector<double> alpha(s_hist.size());
        for (std::size_t k = s_hist.size(); k-- > 0;) {
            alpha[k] = rho_hist[k] * s_hist[k].dot(q);
            q -= alpha[k] * y_hist[k];
        }
        if (!s_hist.empty()) {
            q *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
        } else {
            q /= std::max(1.0, g.norm());
        }
        for (std::size_t k = 0; k < s_hist.size(); ++k) {
            const double beta = rho_hist[k] * y_hist[k].dot(q);
            q += (alpha[k] - beta) * s_hist[k];
        }
        Eigen::VectorXd dir = -q;
        double slope = g.dot(dir);
        if (!(slope < 0.0)) {
            // Not a descent direction: fall back to steepest descent.
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            dir = -g / std::max(1.0, g.norm());
            slope = g.dot(dir);
        }

        double step = 1.0;
        double f_new = 0.0;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            x_new = x + step * dir;
            f_new = eval(x_new, g_new);
            if (std::isfinite(f_new) && f_new <= f + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            out.line_search_failed = true;
            break;
        }

        Eigen::VectorXd s = x_new - x;
        Eigen::VectorXd y = g_new - g;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            s_hist.push_back(std::move(s));
            y_hist.push_back(std::move(y));
            rho_hist.push_back(1.0 / sy);
            if (s_hist.size() > memory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }
        const bool stalled = f - f_new <= 1e-15 * std::max(1.0, std::abs(f));
        x.swap(x_new);
        g.swap(g_new);
        f = f_new;
        out.iterations = it + 1;
        if (stalled) {
            out.converged = true;
            break;
        }
    }
    if (!out.converged && !out.line_search_failed && g.norm() <= target) out.converged = true;
    out.x = std::move(x);
    out.f = f;
    out.grad_norm = g.norm();
    return out;
}

}  // namespace seriation::detail
