#include "seriation/kendall.hpp"

#include <cmath>
#include <vector>

#include "seriation/error.hpp"

namespace seriation {

namespace {

std::uint64_t sort_count(std::vector<std::size_t>& v, std::vector<std::size_t>& buf, std::size_t lo,
                         std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t inv = sort_count(v, buf, lo, mid) + sort_count(v, buf, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[j] < v[i]) {
            inv += mid - i;
            buf[k++] = v[j++];
        } else {
            buf[k++] = v[i++];
        }
    }
    while (i < mid) buf[k++] = v[i++];
    while (j < hi) buf[k++] = v[j++];
    for (std::size_t t = lo; t < hi; ++t) v[t] = buf[t];
    return inv;
}

}  // namespace

std::uint64_t count_inversions(std::span<const std::size_t> values) {
    std::vector<std::size_t> v(values.begin(), values.end());
    std::vector<std::size_t> buf(v.size());
    return sort_count(v, buf, 0, v.size());
}

double kendall_tau(const Permutation& a, const Permutation& b, bool flip_invariant) {
    if (a.size() != b.size()) throw DimensionError("kendall_tau: size mismatch");
    const std::size_t n = a.size();
    if (n < 2) return 1.0;
    // Walk elements in the order given by `a`; discordant pairs are inversions of their b-positions.
    std::vector<std::size_t> seq(n);
    for (std::size_t p = 0; p < n; ++p) seq[p] = b.position(a.element_at(p));
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    const double discordant = static_cast<double>(count_inversions(seq));
    const double tau = (pairs - 2.0 * discordant) / pairs;
    return flip_invariant ? std::abs(tau) : tau;
}

}  // namespace seriation
