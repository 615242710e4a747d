#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace seriation {

/// Dense symmetric matrix whose diagonals decrease away from the main one:
/// every entry on diagonal d+1 is <= every entry on diagonal d.
class StrongRMatrix {
public:
    /// Throws DomainError when `values` is not strong-R within `tol`.
    explicit StrongRMatrix(Eigen::MatrixXd values, double tol = 1e-9);

    Eigen::Index size() const noexcept { return values_.rows(); }
    const Eigen::MatrixXd& values() const noexcept { return values_; }

private:
    Eigen::MatrixXd values_;
};

/// Upper bounds on the per-diagonal levels. Entry k caps the level that sits
/// above diagonal k; b must be nonincreasing and nonnegative.
class DiagonalBounds {
public:
    explicit DiagonalBounds(std::vector<double> bounds);

    /// b_0 = 1 and b_k = k^(-gamma), matching a unit-diagonal power-law Toeplitz matrix.
    static DiagonalBounds power_law(std::size_t n, double gamma);

    std::span<const double> values() const noexcept { return b_; }

private:
    std::vector<double> b_;
};

enum class Norm { l1, l2 };

bool is_strong_r(const Eigen::MatrixXd& m, double tol = 1e-9);

/// Closest strong-R matrix to S in the entrywise l1 or Frobenius norm.
///
/// Levels λ_0 >= λ_1 >= ... >= λ_n >= 0 sandwich diagonal d between λ_{d+1}
/// and λ_d. For fixed levels each entry is clamp(S_uv, λ_{d+1}, λ_d), and the
/// remaining cost splits into one convex piecewise function per level, so the
/// levels solve an isotonic problem; pool-adjacent-violators gives the exact
/// optimum. λ_0 is capped by max(S) or by `bounds[0]`.
StrongRMatrix project_strong_r(const Eigen::MatrixXd& s, Norm norm,
                               const std::optional<DiagonalBounds>& bounds = std::nullopt);

/// Same as above, also returning the optimal levels (size n+1).
StrongRMatrix project_strong_r(const Eigen::MatrixXd& s, Norm norm,
                               const std::optional<DiagonalBounds>& bounds,
                               std::vector<double>& levels);

/// Frobenius distance from M to its Frobenius projection on strong-R matrices.
double dist_to_strong_r(const Eigen::MatrixXd& m);

/// Entrywise l1 distance from M to its l1 projection.
double l1_dist_to_strong_r(const Eigen::MatrixXd& m);

/// Euclidean projection of s onto {x >= 0, Σx = a} by the sort-and-shift rule.
std::vector<double> project_sum_nonneg(std::span<const double> s, double a);

}  // namespace seriation
