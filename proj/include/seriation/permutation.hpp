#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace seriation {

/// Bijection on {0, ..., n-1}.
///
/// `position(i)` is where element i is placed (the vector form used by the
/// seriation losses); `element_at(p)` is the inverse map.
class Permutation {
public:
    Permutation() = default;

    /// Validates that `forward` is a bijection; throws DomainError otherwise.
    explicit Permutation(std::vector<std::size_t> forward);

    static Permutation identity(std::size_t n);

    /// Builds the permutation that places `order[p]` at position p.
    static Permutation from_order(std::span<const std::size_t> order);

    /// Ranks `values` ascending; equal values are ranked by ascending index.
    static Permutation argsort(std::span<const double> values);

    std::size_t size() const noexcept { return forward_.size(); }
    std::size_t position(std::size_t element) const { return forward_[element]; }
    std::size_t element_at(std::size_t position) const { return inverse_[position]; }

    std::span<const std::size_t> forward() const noexcept { return forward_; }
    std::span<const std::size_t> inverse_view() const noexcept { return inverse_; }

    Permutation inverse() const;

    /// Reversal p -> n-1-p, which leaves every loss in this library unchanged.
    Permutation flipped() const;

    /// (this ∘ other)(i) = this(other(i)).
    Permutation compose(const Permutation& other) const;

    /// Positions as doubles, handy for the relaxed solvers.
    std::vector<double> as_vector() const;

    friend bool operator==(const Permutation& a, const Permutation& b) {
        return a.forward_ == b.forward_;
    }

private:
    std::vector<std::size_t> forward_;
    std::vector<std::size_t> inverse_;
};

}  // namespace seriation
