#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "seriation/permutation.hpp"

namespace seriation {

struct Entry {
    std::size_t i = 0;
    std::size_t j = 0;
    double value = 0.0;
};

/// Symmetric nonnegative similarity matrix in coordinate form.
///
/// Only the upper triangle (i <= j) is stored, sorted by (i, j) and with
/// strictly positive finite values. A symmetric CSR adjacency of the
/// off-diagonal entries is kept alongside for mat-vec products.
class SimilarityMatrix {
public:
    SimilarityMatrix() = default;

    /// Entries with i > j are mirrored into the upper triangle. Duplicates,
    /// out-of-range indices and non-positive or non-finite values throw.
    SimilarityMatrix(std::size_t n, std::vector<Entry> entries);

    /// Keeps entries of the upper triangle whose value is > `drop_below`.
    /// Throws when `dense` is not square or not symmetric.
    static SimilarityMatrix from_dense(const Eigen::MatrixXd& dense, double drop_below = 0.0);

    std::size_t n() const noexcept { return n_; }
    std::span<const Entry> entries() const noexcept { return entries_; }

    /// Nonzero count of the full matrix: diagonal once, off-diagonal pairs twice.
    std::size_t nnz() const noexcept;

    Eigen::MatrixXd dense() const;

    /// Matrix whose element i sits at index `perm.position(i)`, i.e. Π A Πᵀ.
    SimilarityMatrix permuted(const Permutation& perm) const;

    /// Same support with every value passed through `f(i, j, value)`.
    template <typename F>
    SimilarityMatrix reweighted(F&& f) const {
        std::vector<Entry> out(entries_.begin(), entries_.end());
        for (auto& e : out) e.value = f(e.i, e.j, e.value);
        return SimilarityMatrix(n_, std::move(out));
    }

    /// Row sums of the off-diagonal part.
    const std::vector<double>& degrees() const noexcept { return degree_; }

    /// Off-diagonal neighbours of `i` as parallel index/value spans.
    std::span<const std::size_t> neighbors(std::size_t i) const {
        return {col_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
    }
    std::span<const double> neighbor_values(std::size_t i) const {
        return {val_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
    }

    /// y = A x over off-diagonal entries only.
    void multiply_offdiagonal(std::span<const double> x, std::span<double> y) const;

    /// Sizes of the connected components of the off-diagonal support, largest first.
    std::vector<std::size_t> component_sizes() const;

    /// Component label for each element (labels start at 0 in index order).
    std::vector<std::size_t> component_labels() const;

    bool is_connected() const { return component_sizes().size() <= 1; }

    double max_value() const noexcept;

private:
    void build_adjacency();

    std::size_t n_ = 0;
    std::vector<Entry> entries_;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::size_t> col_;
    std::vector<double> val_;
    std::vector<double> degree_;
};

}  // namespace seriation
