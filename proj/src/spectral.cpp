#include "seriation/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "seriation/error.hpp"

namespace seriation {

void LaplacianOperator::apply(std::span<const double> x, std::span<double> y) const {
    a_->multiply_offdiagonal(x, y);
    const auto& d = a_->degrees();
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = d[i] * x[i] - y[i];
}

double LaplacianOperator::norm_bound() const {
    const auto& d = a_->degrees();
    double m = 0.0;
    for (double v : d) m = std::max(m, 2.0 * v);
    return m;
}

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

void remove_mean(VectorXd& v) { v.array() -= v.mean(); }

// Orthogonalise w against 1 and the first `k` columns of V, twice.
void orthogonalize(VectorXd& w, const MatrixXd& V, Index k, VectorXd* coeffs) {
    if (coeffs) coeffs->setZero(k);
    for (int pass = 0; pass < 2; ++pass) {
        remove_mean(w);
        if (k == 0) continue;
        const VectorXd h = V.leftCols(k).transpose() * w;
        w -= V.leftCols(k) * h;
        if (coeffs) *coeffs += h;
    }
}

VectorXd fresh_direction(Index n, std::mt19937_64& rng, const MatrixXd& V, Index k) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int attempt = 0; attempt < 8; ++attempt) {
        VectorXd w(n);
        for (Index i = 0; i < n; ++i) w(i) = unif(rng);
        orthogonalize(w, V, k, nullptr);
        const double nw = w.norm();
        if (nw > 1e-8) return w / nw;
    }
    return VectorXd::Zero(n);
}

}  // namespace

FiedlerResult fiedler_vector(const SimilarityMatrix& a, const FiedlerOptions& opts) {
    const std::size_t n = a.n();
    if (n < 2) throw DomainError("fiedler_vector: need at least two elements");
    if (!(opts.tol > 0.0)) throw DomainError("fiedler_vector: tol must be positive");
    if (auto sizes = a.component_sizes(); sizes.size() > 1) throw DisconnectedError(std::move(sizes));

    const LaplacianOperator lap(a);
    const Index nn = static_cast<Index>(n);
    const Index m = static_cast<Index>(std::min<std::size_t>(n - 1, std::max<std::size_t>(opts.max_basis, 4)));
    const std::size_t budget = opts.max_iter ? opts.max_iter : 50 * n;
    const double breakdown = 1e-12 * std::max(1.0, lap.norm_bound());

    // Fixed seed: results must not depend on anything but the input.
    std::mt19937_64 rng(0x5eed5eedULL);
    MatrixXd V(nn, m + 1);
    MatrixXd T = MatrixXd::Zero(m, m);
    V.col(0) = fresh_direction(nn, rng, V, 0);

    VectorXd w(nn), h;
    std::size_t matvecs = 0;
    Index kept = 0;
    double last_residual = std::numeric_limits<double>::infinity();

    while (true) {
        Index filled = m;
        double beta = 0.0;
        for (Index j = kept; j < m; ++j) {
            lap.apply(std::span<const double>(V.col(j).data(), n), std::span<double>(w.data(), n));
            ++matvecs;
            orthogonalize(w, V, j + 1, &h);
            for (Index i = 0; i <= j; ++i) T(i, j) = T(j, i) = h(i);
            beta = w.norm();
            if (j + 1 == m) {
                filled = m;
                break;
            }
            if (beta <= breakdown) {
                // Invariant subspace: continue with an unrelated direction.
                V.col(j + 1) = fresh_direction(nn, rng, V, j + 1);
                if (V.col(j + 1).squaredNorm() == 0.0) {
                    filled = j + 1;
                    beta = 0.0;
                    break;
                }
                T(j + 1, j) = T(j, j + 1) = 0.0;
            } else {
                V.col(j + 1) = w / beta;
                T(j + 1, j) = T(j, j + 1) = beta;
            }
        }

        Eigen::SelfAdjointEigenSolver<MatrixXd> eig(T.topLeftCorner(filled, filled));
        const VectorXd& theta = eig.eigenvalues();
        const MatrixXd& S = eig.eigenvectors();

        VectorXd x = V.leftCols(filled) * S.col(0);
        remove_mean(x);
        x.normalize();
        VectorXd lx(nn);
        lap.apply(std::span<const double>(x.data(), n), std::span<double>(lx.data(), n));
        const double lambda = x.dot(lx);
        last_residual = (lx - lambda * x).norm();

        if (last_residual <= opts.tol || filled == static_cast<Index>(n - 1)) {
            if (last_residual > opts.tol) {
                throw ConvergenceError("fiedler_vector: full Krylov space reached above tolerance",
                                       last_residual);
            }
            for (Index i = 0; i < nn; ++i) {
                if (std::abs(x(i)) > 1e-10) {
                    if (x(i) < 0) x = -x;
                    break;
                }
            }
            FiedlerResult out;
            out.vector.assign(x.data(), x.data() + nn);
            out.eigenvalue = lambda;
            out.residual = last_residual;
            out.matvecs = matvecs;
            return out;
        }
        if (matvecs >= budget) {
            throw ConvergenceError("fiedler_vector: no convergence within " + std::to_string(budget) +
                                       " mat-vecs",
                                   last_residual);
        }

        // Thick restart on the smallest half of the Ritz pairs.
        const Index keep = std::max<Index>(1, filled / 2);
        MatrixXd ritz = V.leftCols(filled) * S.leftCols(keep);
        V.leftCols(keep) = ritz;
        T.setZero();
        for (Index i = 0; i < keep; ++i) T(i, i) = theta(i);
        if (beta > breakdown) {
            orthogonalize(w, V, keep, nullptr);
            V.col(keep) = w.normalized();
        } else {
            V.col(keep) = fresh_direction(nn, rng, V, keep);
        }
        kept = keep;
    }
}

SolverReport spectral_order(const SimilarityMatrix& a, const FiedlerOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    const auto f = fiedler_vector(a, opts);
    SolverReport rep;
    rep.permutation = Permutation::argsort(f.vector);
    rep.loss_kind = TwoSum{};
    rep.objective = loss(a, rep.permutation, rep.loss_kind);
    rep.iterations = 1;
    rep.trace.push_back({0, rep.objective});
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace seriation
