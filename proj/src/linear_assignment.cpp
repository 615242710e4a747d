#include "seriation/linear_assignment.hpp"

#include <limits>
#include <vector>

#include "seriation/error.hpp"

namespace seriation {

CostMatrix::CostMatrix(Eigen::MatrixXd costs) : costs_(std::move(costs)) {
    if (costs_.rows() != costs_.cols()) throw DimensionError("cost matrix must be square");
    if (!costs_.allFinite()) throw DomainError("cost matrix has non-finite entries");
}

Permutation linear_assignment(const CostMatrix& costs, Sense sense) {
    const auto n = static_cast<std::size_t>(costs.size());
    if (n == 0) return Permutation::identity(0);
    const double sign = sense == Sense::minimize ? 1.0 : -1.0;
    const auto& c = costs.values();
    const double inf = std::numeric_limits<double>::infinity();

    // 1-based potentials; column 0 is a virtual source.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    for (std::size_t row = 1; row <= n; ++row) {
        match[0] = row;
        std::size_t col0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[col0] = 1;
            const std::size_t r = match[col0];
            double delta = inf;
            std::size_t col1 = 0;
            for (std::size_t col = 1; col <= n; ++col) {
                if (used[col]) continue;
                const double cur = sign * c(static_cast<Eigen::Index>(r - 1), static_cast<Eigen::Index>(col - 1)) -
                                   u[r] - v[col];
                if (cur < minv[col]) {
                    minv[col] = cur;
                    way[col] = col0;
                }
                if (minv[col] < delta) {
                    delta = minv[col];
                    col1 = col;
                }
            }
            for (std::size_t col = 0; col <= n; ++col) {
                if (used[col]) {
                    u[match[col]] += delta;
                    v[col] -= delta;
                } else {
                    minv[col] -= delta;
                }
            }
            col0 = col1;
        } while (match[col0] != 0);
        do {
            const std::size_t col1 = way[col0];
            match[col0] = match[col1];
            col0 = col1;
        } while (col0 != 0);
    }
    std::vector<std::size_t> assign(n);
    for (std::size_t col = 1; col <= n; ++col) assign[match[col] - 1] = col - 1;
    return Permutation(std::move(assign));
}

double assignment_cost(const CostMatrix& costs, const Permutation& perm) {
    if (static_cast<Eigen::Index>(perm.size()) != costs.size()) {
        throw DimensionError("assignment_cost: size mismatch");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        total += costs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(perm.position(i)));
    }
    return total;
}

}  // namespace seriation
