#pragma once

#include <span>
#include <string>
#include <variant>

#include "seriation/permutation.hpp"
#include "seriation/similarity_matrix.hpp"

namespace seriation {

struct TwoSum {};

/// Squared gap truncated at `lambda` (squared-position units).
struct R2Sum {
    double lambda;
};

/// Huber penalty of the gap with transition width `delta` (position units).
struct Huber {
    double delta;
};

using LossKind = std::variant<TwoSum, R2Sum, Huber>;

/// Throws DomainError unless lambda > 0 / delta >= 1.
void validate(const LossKind& kind);

std::string to_string(const LossKind& kind);

/// x² for |x| <= delta, delta (2|x| - delta) beyond.
double huber(double x, double delta);

/// d/dx of huber(x, delta).
double huber_derivative(double x, double delta);

/// Per-pair penalty of a gap d under `kind`.
double pair_penalty(const LossKind& kind, double gap);

/// Sum over ordered pairs i != j of A_ij · penalty(π_i - π_j).
double loss(const SimilarityMatrix& a, const Permutation& perm, const LossKind& kind);

/// Same sum with real-valued positions substituted for π.
double loss(const SimilarityMatrix& a, std::span<const double> x, const LossKind& kind);

/// d/dgap of pair_penalty; R2Sum uses 0 beyond the cap.
double pair_penalty_derivative(const LossKind& kind, double gap);

/// Value of loss(a, x, kind) and its gradient with respect to x.
double loss_with_gradient(const SimilarityMatrix& a, std::span<const double> x, const LossKind& kind,
                          std::span<double> grad);

/// xᵀ L_A x with L_A = diag(A·1) - A.
double two_sum_quadratic_form(const SimilarityMatrix& a, std::span<const double> x);

}  // namespace seriation
