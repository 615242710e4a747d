#include "seriation/bandwidth.hpp"

#include "seriation/error.hpp"

namespace seriation {

std::size_t band_nonzeros(std::size_t n, std::size_t delta) {
    if (delta >= n) return n * n;
    return n + (2 * n - 1) * delta - delta * delta;
}

BandwidthEstimate estimate_bandwidth(std::size_t n, std::size_t nnz) {
    if (n == 0) throw DomainError("estimate_bandwidth: empty matrix");
    if (nnz > n * n) throw DomainError("estimate_bandwidth: nnz exceeds n²");
    std::size_t delta = 1;
    while (delta < n && band_nonzeros(n, delta) < nnz) ++delta;
    return {delta, static_cast<double>(delta) * static_cast<double>(delta)};
}

BandwidthEstimate estimate_bandwidth(const SimilarityMatrix& a) {
    return estimate_bandwidth(a.n(), a.nnz());
}

}  // namespace seriation
