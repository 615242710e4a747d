#pragma once

#include <cstddef>

#include "seriation/similarity_matrix.hpp"

namespace seriation {

struct BandwidthEstimate {
    std::size_t delta;
    double lambda;  // delta²
};

/// Nonzero count of an n×n band matrix of half-width delta: n + (2n-1)δ - δ².
std::size_t band_nonzeros(std::size_t n, std::size_t delta);

/// Smallest δ >= 1 whose band holds at least nnz(A) nonzeros.
BandwidthEstimate estimate_bandwidth(const SimilarityMatrix& a);

/// Same rule from raw counts.
BandwidthEstimate estimate_bandwidth(std::size_t n, std::size_t nnz);

}  // namespace seriation
