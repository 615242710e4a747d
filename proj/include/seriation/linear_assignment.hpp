#pragma once

#include <Eigen/Dense>

#include "seriation/permutation.hpp"

namespace seriation {

/// Square matrix of finite assignment costs.
class CostMatrix {
public:
    /// Throws DimensionError if not square, DomainError on non-finite entries.
    explicit CostMatrix(Eigen::MatrixXd costs);

    Eigen::Index size() const noexcept { return costs_.rows(); }
    const Eigen::MatrixXd& values() const noexcept { return costs_; }
    double operator()(Eigen::Index i, Eigen::Index j) const { return costs_(i, j); }

private:
    Eigen::MatrixXd costs_;
};

enum class Sense { minimize, maximize };

/// Optimal assignment row i -> column `result.position(i)`.
///
/// Shortest augmenting path Hungarian method with row/column potentials, O(n³).
Permutation linear_assignment(const CostMatrix& costs, Sense sense = Sense::minimize);

/// Σ_i C(i, perm(i)).
double assignment_cost(const CostMatrix& costs, const Permutation& perm);

}  // namespace seriation
