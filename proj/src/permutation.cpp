#include "seriation/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "seriation/error.hpp"

namespace seriation {

Permutation::Permutation(std::vector<std::size_t> forward) : forward_(std::move(forward)) {
    const std::size_t n = forward_.size();
    inverse_.assign(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t p = forward_[i];
        if (p >= n || inverse_[p] != n) {
            throw DomainError("not a permutation: value " + std::to_string(p) + " at index " +
                              std::to_string(i));
        }
        inverse_[p] = i;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> f(n);
    std::iota(f.begin(), f.end(), std::size_t{0});
    return Permutation(std::move(f));
}

Permutation Permutation::from_order(std::span<const std::size_t> order) {
    const std::size_t n = order.size();
    std::vector<std::size_t> f(n, n);
    for (std::size_t p = 0; p < n; ++p) {
        if (order[p] >= n || f[order[p]] != n) throw DomainError("order is not a permutation");
        f[order[p]] = p;
    }
    return Permutation(std::move(f));
}

Permutation Permutation::argsort(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    return from_order(order);
}

Permutation Permutation::inverse() const { return Permutation(inverse_); }

Permutation Permutation::flipped() const {
    const std::size_t n = size();
    std::vector<std::size_t> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = n - 1 - forward_[i];
    return Permutation(std::move(f));
}

Permutation Permutation::compose(const Permutation& other) const {
    if (other.size() != size()) throw DimensionError("compose: size mismatch");
    std::vector<std::size_t> f(size());
    for (std::size_t i = 0; i < size(); ++i) f[i] = forward_[other.forward_[i]];
    return Permutation(std::move(f));
}

std::vector<double> Permutation::as_vector() const {
    return {forward_.begin(), forward_.end()};
}

}  // namespace seriation
