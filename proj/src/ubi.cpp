#include <chrono>
#include <cmath>
#include <string>

#include "lbfgs.hpp"
#include "seriation/error.hpp"
#include "seriation/solvers.hpp"

namespace seriation {

namespace {

double sigmoid(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

std::vector<double> centered(std::span<const double> w, double c) {
    std::vector<double> out(w.begin(), w.end());
    for (double& v : out) v -= c;
    return out;
}

}  // namespace

HyperplaneBasis::HyperplaneBasis(std::size_t n) : n_(n) {
    if (n < 2) throw DomainError("HyperplaneBasis: need n >= 2");
    inv_norm_.resize(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double m = static_cast<double>(n - 1 - j);
        inv_norm_[j] = 1.0 / std::sqrt(m * (m + 1.0));
    }
}

void HyperplaneBasis::apply(std::span<const double> y, std::span<double> x) const {
    if (y.size() != n_ - 1 || x.size() != n_) throw DimensionError("HyperplaneBasis::apply: size mismatch");
    // x_i = Σ_{j<i} y_j/‖ũ_j‖ - (n-1-i) y_i/‖ũ_i‖.
    double prefix = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        double v = prefix;
        if (i + 1 < n_) {
            const double z = y[i] * inv_norm_[i];
            v -= static_cast<double>(n_ - 1 - i) * z;
            prefix += z;
        }
        x[i] = v;
    }
}

void HyperplaneBasis::apply_transpose(std::span<const double> x, std::span<double> y) const {
    if (y.size() != n_ - 1 || x.size() != n_) throw DimensionError("HyperplaneBasis::apply_transpose: size mismatch");
    double suffix = 0.0;  // Σ_{i>j} x_i
    for (std::size_t j = n_ - 1; j-- > 0;) {
        suffix += x[j + 1];
        y[j] = (suffix - static_cast<double>(n_ - 1 - j) * x[j]) * inv_norm_[j];
    }
}

std::vector<double> HyperplaneBasis::to_positions(std::span<const double> y) const {
    std::vector<double> x(n_);
    apply(y, x);
    for (double& v : x) v += center();
    return x;
}

Eigen::MatrixXd HyperplaneBasis::dense() const {
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_ - 1));
    for (std::size_t j = 0; j + 1 < n_; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        u(jj, jj) = -static_cast<double>(n_ - 1 - j) * inv_norm_[j];
        for (std::size_t i = j + 1; i < n_; ++i) u(static_cast<Eigen::Index>(i), jj) = inv_norm_[j];
    }
    return u;
}

UbiObjective::UbiObjective(const SimilarityMatrix& a, LossKind kind, std::vector<double> bias, double mu,
                           double lambda_sig)
    : a_(&a), kind_(std::move(kind)), basis_(a.n()), mu_(mu), lambda_(lambda_sig), x_(a.n()), gx_(a.n()) {
    if (bias.size() != a.n()) throw DimensionError("UbiObjective: bias size mismatch");
    if (!(mu >= 0.0) || !(lambda_sig > 0.0)) throw DomainError("UbiObjective: need mu >= 0 and lambda > 0");
    const auto wc = centered(bias, basis_.center());
    w_centered_.resize(basis_.dim());
    basis_.apply_transpose(wc, w_centered_);
}

double UbiObjective::operator()(std::span<const double> y, std::span<double> grad) const {
    basis_.apply(y, x_);
    double t = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) t += y[k] * w_centered_[k];
    t *= lambda_;
    for (double& v : x_) v += basis_.center();
    const double f = loss_with_gradient(*a_, x_, kind_, gx_);
    basis_.apply_transpose(gx_, grad);
    const double s = sigmoid(t);
    const double coef = mu_ * s * (1.0 - s) * lambda_;
    for (std::size_t k = 0; k < grad.size(); ++k) grad[k] -= coef * w_centered_[k];
    return f - mu_ * s;
}

double ubi_default_mu(const SimilarityMatrix& a, const LossKind& kind, std::span<const double> bias,
                      double lambda_sig) {
    const double c = 0.5 * static_cast<double>(a.n() - 1);
    std::vector<double> g(a.n());
    const double f = loss_with_gradient(a, bias, kind, g);
    double radial = 0.0, norm2 = 0.0;
    for (std::size_t i = 0; i < a.n(); ++i) {
        radial += g[i] * (bias[i] - c);
        norm2 += (bias[i] - c) * (bias[i] - c);
    }
    const double s = sigmoid(lambda_sig * norm2);
    const double mu = radial / (s * (1.0 - s));
    if (std::isfinite(mu) && mu > 0.0) return mu;
    return f > 0.0 ? f : 1.0;
}

SolverReport ubi(const SimilarityMatrix& a, const LossKind& kind, const UbiConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    validate(kind);
    if (std::holds_alternative<R2Sum>(kind)) throw DomainError("ubi: loss must be 2-SUM or Huber");
    if (cfg.mu && !(*cfg.mu >= 0.0)) throw DomainError("ubi: mu must be >= 0");
    if (cfg.lambda_sig && !(*cfg.lambda_sig > 0.0)) throw DomainError("ubi: lambda_sig must be positive");

    SolverReport rep;
    rep.loss_kind = kind;
    rep.permutation = spectral_order(a, cfg.fiedler).permutation;
    rep.objective = loss(a, rep.permutation, kind);
    rep.trace.push_back({0, rep.objective});

    const HyperplaneBasis basis(a.n());
    Permutation bias = rep.permutation;
    for (std::size_t round = 1; round <= cfg.max_iter; ++round) {
        const auto w = bias.as_vector();
        double norm2 = 0.0;
        for (double v : w) norm2 += (v - basis.center()) * (v - basis.center());
        const double lambda_sig = cfg.lambda_sig ? *cfg.lambda_sig : 1.0 / norm2;
        const double mu = cfg.mu ? *cfg.mu : ubi_default_mu(a, kind, w, lambda_sig);
        const UbiObjective obj(a, kind, w, mu, lambda_sig);

        Eigen::VectorXd y0(static_cast<Eigen::Index>(basis.dim()));
        const auto wc = centered(w, basis.center());
        basis.apply_transpose(wc, std::span<double>(y0.data(), basis.dim()));
        const auto res = detail::lbfgs(obj, std::move(y0), cfg.memory, cfg.grad_tol, cfg.max_inner);
        rep.iterations = round;
        if (res.line_search_failed) {
            rep.warning = true;
            rep.note = "line search failed in round " + std::to_string(round);
            break;
        }
        const auto x = basis.to_positions(std::span<const double>(res.x.data(), basis.dim()));
        Permutation next = Permutation::argsort(x);
        const double score = loss(a, next, kind);
        if (score < rep.objective) {
            rep.objective = score;
            rep.permutation = next;
        }
        rep.trace.push_back({round, rep.objective});
        if (next == bias) break;
        bias = std::move(next);
    }
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace seriation
