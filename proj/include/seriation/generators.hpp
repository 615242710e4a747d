#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>

#include <Eigen/Dense>

#include "seriation/duplication.hpp"
#include "seriation/permutation.hpp"
#include "seriation/projections.hpp"
#include "seriation/random.hpp"
#include "seriation/similarity_matrix.hpp"

namespace seriation {

/// Shuffled band-plus-outliers instance with its hidden order.
struct BandedInstance {
    SimilarityMatrix a;  // observed matrix
    Permutation truth;   // a.permuted(truth) is the unshuffled matrix
    std::size_t n = 0;
    std::size_t delta = 0;
    std::size_t s = 0;  // out-of-band entries in the upper triangle
    std::uint64_t seed = 0;
};

/// Outlier budget at which the true order stops being provably optimal: n - δ - 1.
std::size_t s_limit(std::size_t n, std::size_t delta);

/// Ones on |i-j| <= δ plus round(s_ratio · (n-δ-1)) random symmetric
/// out-of-band ones, rows and columns then shuffled uniformly.
BandedInstance gen_banded(std::size_t n, std::size_t delta, double s_ratio, std::uint64_t seed);

/// Unshuffled band matrix with `s` out-of-band ones at uniform positions.
SimilarityMatrix gen_band_with_outliers(std::size_t n, std::size_t delta, std::size_t s, Rng& rng);

/// True when `b` is a 0/1 matrix holding the full band of half-width δ and
/// exactly `s` out-of-band ones above the diagonal.
bool is_band_with_outliers(const SimilarityMatrix& b, std::size_t delta, std::size_t s);

/// S_kl = |k-l|^(-γ), unit diagonal.
StrongRMatrix gen_toeplitz_powerlaw(std::size_t n, double gamma);

struct PowerLawKind {
    double gamma;
};
struct BandedKind {
    std::size_t delta;
    std::size_t s = 0;
};
using DupliMatrixKind = std::variant<PowerLawKind, BandedKind>;

struct DupliInstance {
    Eigen::MatrixXd s_true;  // N×N; strong-R unless a banded kind has outliers
    DuplicationCounts counts;
    AssignmentMatrix z_true;
    SimilarityMatrix a;  // observed n×n matrix
    double noise_prop = 0.0;
    std::uint64_t seed = 0;
};

/// n = round(N / ratio) bins; the N - n extra fragments go to uniform random
/// bins; fragment positions are shuffled and dealt to the bins; A = Z S Zᵀ,
/// then A <- max(0, A ∘ (1 + noise_prop · E)) with E symmetric uniform on [-1, 1].
DupliInstance gen_dupli_instance(std::size_t big_n, double ratio, const DupliMatrixKind& kind, double noise_prop,
                                 std::uint64_t seed);

/// Random counts with Σc = total and every c_i >= 1.
DuplicationCounts random_counts(std::size_t n, std::size_t total, Rng& rng);

}  // namespace seriation
