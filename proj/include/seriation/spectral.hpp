#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "seriation/similarity_matrix.hpp"
#include "seriation/solver_report.hpp"

namespace seriation {

/// Graph Laplacian L = diag(A·1) - A applied through sparse products.
class LaplacianOperator {
public:
    explicit LaplacianOperator(const SimilarityMatrix& a) : a_(&a) {}

    std::size_t size() const noexcept { return a_->n(); }
    const std::vector<double>& degrees() const noexcept { return a_->degrees(); }

    void apply(std::span<const double> x, std::span<double> y) const;

    /// Gershgorin bound on the largest eigenvalue.
    double norm_bound() const;

private:
    const SimilarityMatrix* a_;
};

struct FiedlerOptions {
    double tol = 1e-8;
    std::size_t max_iter = 0;  // mat-vec budget; 0 means 50·n
    std::size_t max_basis = 160;
};

struct FiedlerResult {
    std::vector<double> vector;  // unit norm, orthogonal to 1, first nonzero entry positive
    double eigenvalue = 0.0;
    double residual = 0.0;  // ‖L x - λ x‖
    std::size_t matvecs = 0;
};

/// Second smallest eigenpair of L_A.
///
/// Thick-restart Lanczos with full reorthogonalisation; the all-ones vector
/// is deflated explicitly at every step. Throws DisconnectedError when A has
/// several components and ConvergenceError when the mat-vec budget runs out.
FiedlerResult fiedler_vector(const SimilarityMatrix& a, const FiedlerOptions& opts = {});

/// Sorts the Fiedler vector; ties keep ascending element index.
SolverReport spectral_order(const SimilarityMatrix& a, const FiedlerOptions& opts = {});

}  // namespace seriation
