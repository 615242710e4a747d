#pragma once

#include <cstdint>
#include <span>

#include "seriation/permutation.hpp"

namespace seriation {

/// Number of pairs i < j with v[i] > v[j], by merge sort.
std::uint64_t count_inversions(std::span<const std::size_t> values);

/// Kendall rank correlation between two position vectors, O(n log n).
///
/// Permutations have no ties, so this is (C - D) / binom(n, 2). With
/// `flip_invariant` the result is max(tau(a, b), tau(flip(a), b)) = |tau|.
double kendall_tau(const Permutation& a, const Permutation& b, bool flip_invariant = true);

}  // namespace seriation
