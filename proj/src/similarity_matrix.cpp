#include "seriation/similarity_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seriation/error.hpp"

namespace seriation {

DisconnectedError::DisconnectedError(std::vector<std::size_t> component_sizes)
    : Error([&] {
          std::string msg = "similarity graph is disconnected: " +
                            std::to_string(component_sizes.size()) + " components of sizes";
          for (auto s : component_sizes) msg += " " + std::to_string(s);
          return msg;
      }()),
      sizes_(std::move(component_sizes)) {}

SimilarityMatrix::SimilarityMatrix(std::size_t n, std::vector<Entry> entries)
    : n_(n), entries_(std::move(entries)) {
    for (auto& e : entries_) {
        if (e.i >= n_ || e.j >= n_) {
            throw DomainError("entry (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                              ") out of range for n = " + std::to_string(n_));
        }
        if (!std::isfinite(e.value) || e.value <= 0.0) {
            throw DomainError("entry (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                              ") must be positive and finite");
        }
        if (e.i > e.j) std::swap(e.i, e.j);
    }
    std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    for (std::size_t k = 1; k < entries_.size(); ++k) {
        if (entries_[k].i == entries_[k - 1].i && entries_[k].j == entries_[k - 1].j) {
            throw DomainError("duplicate entry (" + std::to_string(entries_[k].i) + ", " +
                              std::to_string(entries_[k].j) + ")");
        }
    }
    build_adjacency();
}

SimilarityMatrix SimilarityMatrix::from_dense(const Eigen::MatrixXd& dense, double drop_below) {
    if (dense.rows() != dense.cols()) throw DimensionError("similarity matrix must be square");
    const auto n = static_cast<std::size_t>(dense.rows());
    const double scale = std::max(1.0, dense.cwiseAbs().maxCoeff());
    std::vector<Entry> entries;
    for (Eigen::Index i = 0; i < dense.rows(); ++i) {
        for (Eigen::Index j = i; j < dense.cols(); ++j) {
            if (std::abs(dense(i, j) - dense(j, i)) > 1e-12 * scale) {
                throw DomainError("similarity matrix must be symmetric");
            }
            const double v = dense(i, j);
            if (v < 0.0 || !std::isfinite(v)) throw DomainError("similarity entries must be finite and >= 0");
            if (v > drop_below && v > 0.0) {
                entries.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), v});
            }
        }
    }
    return SimilarityMatrix(n, std::move(entries));
}

std::size_t SimilarityMatrix::nnz() const noexcept {
    std::size_t count = 0;
    for (const auto& e : entries_) count += (e.i == e.j) ? 1 : 2;
    return count;
}

Eigen::MatrixXd SimilarityMatrix::dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    for (const auto& e : entries_) {
        m(static_cast<Eigen::Index>(e.i), static_cast<Eigen::Index>(e.j)) = e.value;
        m(static_cast<Eigen::Index>(e.j), static_cast<Eigen::Index>(e.i)) = e.value;
    }
    return m;
}

SimilarityMatrix SimilarityMatrix::permuted(const Permutation& perm) const {
    if (perm.size() != n_) throw DimensionError("permuted: size mismatch");
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back({perm.position(e.i), perm.position(e.j), e.value});
    return SimilarityMatrix(n_, std::move(out));
}

void SimilarityMatrix::multiply_offdiagonal(std::span<const double> x, std::span<double> y) const {
    if (x.size() != n_ || y.size() != n_) throw DimensionError("multiply: size mismatch");
    for (std::size_t i = 0; i < n_; ++i) {
        double acc = 0.0;
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) acc += val_[k] * x[col_[k]];
        y[i] = acc;
    }
}

std::vector<std::size_t> SimilarityMatrix::component_labels() const {
    const std::size_t unset = n_;
    std::vector<std::size_t> label(n_, unset);
    std::vector<std::size_t> stack;
    std::size_t next = 0;
    for (std::size_t s = 0; s < n_; ++s) {
        if (label[s] != unset) continue;
        label[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t k = row_ptr_[u]; k < row_ptr_[u + 1]; ++k) {
                if (label[col_[k]] == unset) {
                    label[col_[k]] = next;
                    stack.push_back(col_[k]);
                }
            }
        }
        ++next;
    }
    return label;
}

std::vector<std::size_t> SimilarityMatrix::component_sizes() const {
    const auto labels = component_labels();
    std::vector<std::size_t> sizes;
    for (auto l : labels) {
        if (l >= sizes.size()) sizes.resize(l + 1, 0);
        ++sizes[l];
    }
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
}

double SimilarityMatrix::max_value() const noexcept {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, e.value);
    return m;
}

void SimilarityMatrix::build_adjacency() {
    std::vector<std::size_t> count(n_ + 1, 0);
    for (const auto& e : entries_) {
        if (e.i == e.j) continue;
        ++count[e.i + 1];
        ++count[e.j + 1];
    }
    row_ptr_.assign(n_ + 1, 0);
    for (std::size_t i = 0; i < n_; ++i) row_ptr_[i + 1] = row_ptr_[i] + count[i + 1];
    col_.assign(row_ptr_[n_], 0);
    val_.assign(row_ptr_[n_], 0.0);
    std::vector<std::size_t> fill(row_ptr_.begin(), row_ptr_.end() - 1);
    for (const auto& e : entries_) {
        if (e.i == e.j) continue;
        col_[fill[e.i]] = e.j;
        val_[fill[e.i]++] = e.value;
        col_[fill[e.j]] = e.i;
        val_[fill[e.j]++] = e.value;
    }
    degree_.assign(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) degree_[i] += val_[k];
    }
}

}  // namespace seriation
