#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "seriation/loss.hpp"
#include "seriation/permutation.hpp"
#include "seriation/similarity_matrix.hpp"
#include "seriation/solver_report.hpp"
#include "seriation/spectral.hpp"

namespace seriation {

// ---------------------------------------------------------------- η-Spectral

struct EtaSpectralConfig {
    std::optional<double> delta;  // Huber width; default: estimate_bandwidth(A)
    std::size_t max_iter = 20;    // reweighting rounds after the plain spectral pass
    double gamma = 0.5;           // η <- γ η + (1-γ) η*
    FiedlerOptions fiedler;
};

/// Spectral ordering of A ./ η, alternated with η*_ij = max(|π_i - π_j|, δ).
///
/// Every iterate is scored with HuberSUM(δ) and the best one is returned, so
/// the result is never worse than plain spectral ordering (iteration 0).
SolverReport eta_spectral(const SimilarityMatrix& a, const EtaSpectralConfig& cfg = {});

// ---------------------------------------------------------------------- UBI

/// Orthonormal basis of {x : xᵀ1 = 0} with column j ∝ (0,…,0, -(n-1-j), 1,…,1),
/// the negative entry at index j. Products with U and Uᵀ cost O(n).
class HyperplaneBasis {
public:
    explicit HyperplaneBasis(std::size_t n);

    std::size_t n() const noexcept { return n_; }
    std::size_t dim() const noexcept { return n_ - 1; }
    /// Mean position (n-1)/2 of every permutation vector.
    double center() const noexcept { return 0.5 * static_cast<double>(n_ - 1); }

    /// x = U y.
    void apply(std::span<const double> y, std::span<double> x) const;
    /// y = Uᵀ x.
    void apply_transpose(std::span<const double> x, std::span<double> y) const;
    /// U y + center·1.
    std::vector<double> to_positions(std::span<const double> y) const;

    Eigen::MatrixXd dense() const;

private:
    std::size_t n_;
    std::vector<double> inv_norm_;
};

struct UbiConfig {
    std::size_t max_iter = 10;        // outer rebiasing rounds
    std::optional<double> mu;         // penalty magnitude; see ubi()
    std::optional<double> lambda_sig; // sigmoid sharpness; default 1/‖w - c‖²
    std::size_t memory = 10;          // L-BFGS pairs
    double grad_tol = 1e-6;           // relative to the initial gradient norm
    std::size_t max_inner = 500;
    FiedlerOptions fiedler;
};

/// Penalised objective of one UBI round, in hyperplane coordinates:
/// f(y) = loss(U y + c) - μ σ(λ (U y)ᵀ(w - c)).
class UbiObjective {
public:
    UbiObjective(const SimilarityMatrix& a, LossKind kind, std::vector<double> bias, double mu, double lambda_sig);

    std::size_t dim() const noexcept { return basis_.dim(); }
    double operator()(std::span<const double> y, std::span<double> grad) const;
    const HyperplaneBasis& basis() const noexcept { return basis_; }

private:
    const SimilarityMatrix* a_;
    LossKind kind_;
    HyperplaneBasis basis_;
    std::vector<double> w_centered_;
    double mu_;
    double lambda_;
    mutable std::vector<double> x_, gx_;
};

/// Default penalty magnitude: the μ that makes the bias point w stationary
/// along the ray from the center, ∇loss(w)ᵀ(w - c) / σ'(λ‖w - c‖²).
double ubi_default_mu(const SimilarityMatrix& a, const LossKind& kind, std::span<const double> bias,
                      double lambda_sig);

/// Unconstrained optimisation with a sigmoid bias towards the current
/// permutation, started from the spectral ordering. `kind` is TwoSum or Huber.
SolverReport ubi(const SimilarityMatrix& a, const LossKind& kind, const UbiConfig& cfg = {});

// ---------------------------------------------------------------------- FAQ

struct TwoSumB {};
struct TruncatedB {
    double lambda;
};
struct HuberB {
    double delta;
};
using QapKind = std::variant<TwoSumB, TruncatedB, HuberB>;

/// Loss on permutations that the QAP objective with this B reproduces.
LossKind to_loss_kind(const QapKind& kind);

/// Symmetric Toeplitz B_kl = penalty(|k - l|).
Eigen::MatrixXd toeplitz_b(const QapKind& kind, std::size_t n);

struct FaqOptions {
    std::size_t max_iter = 1000;
    double tol = 1e-6;  // stop when the Frank-Wolfe gap <= tol · max(1, |f|)
    /// Called with every iterate P, including the starting point.
    std::function<void(const Eigen::MatrixXd&)> on_iterate;
};

/// Frank-Wolfe on trace(A P B Pᵀ) over doubly stochastic P, rounded at the end.
SolverReport faq(const SimilarityMatrix& a, const QapKind& kind, const FaqOptions& opts = {});

// --------------------------------------------------------------------- FWTB

/// Minimises gᵀπ over permutations (0-based positions) with π_i + 1 <= π_j.
Permutation lmo_tiebreak(std::span<const double> g, std::size_t i, std::size_t j);

enum class TieBreak { naive, spectral_init };

struct FwtbOptions {
    TieBreak tiebreak = TieBreak::naive;
    std::size_t max_iter = 200;
    double tol = 1e-6;  // relative Frank-Wolfe gap
    FiedlerOptions fiedler;
};

/// Away-step Frank-Wolfe over the permutahedron cut by π_i + 1 <= π_j.
///
/// naive uses (i, j) = (0, n-1) and starts from the identity; spectral_init
/// takes i, j as the first and last elements of the spectral order and starts
/// there. Every iterate is rounded by sorting; the best rounding is reported.
SolverReport fwtb(const SimilarityMatrix& a, const LossKind& kind, const FwtbOptions& opts = {});

// ------------------------------------------------------------------ by name

/// "spectral", "eta-spectral", "ubi", "faq", "fwtb".
enum class SolverName { spectral, eta_spectral, ubi, faq, fwtb };

std::string to_string(SolverName s);
SolverName parse_solver_name(const std::string& name);

}  // namespace seriation
