#include "seriation/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "seriation/error.hpp"

namespace seriation {

using Eigen::Index;
using Eigen::MatrixXd;

std::size_t s_limit(std::size_t n, std::size_t delta) { return delta + 1 < n ? n - delta - 1 : 0; }

namespace {

// Upper-triangle slots strictly outside the band: rows i hold j = i+δ+1..n-1.
std::size_t out_of_band_slots(std::size_t n, std::size_t delta) {
    const std::size_t m = s_limit(n, delta);
    return m * (m + 1) / 2;
}

std::vector<std::size_t> identity_vector(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

}  // namespace

SimilarityMatrix gen_band_with_outliers(std::size_t n, std::size_t delta, std::size_t s, Rng& rng) {
    if (n == 0) throw DomainError("gen_band_with_outliers: n must be positive");
    const std::size_t slots = out_of_band_slots(n, delta);
    if (s > slots) throw DomainError("gen_band_with_outliers: s exceeds the out-of-band slots");

    // Floyd's sampling of s distinct slot indices.
    std::set<std::size_t> picked;
    for (std::size_t t = slots - s; t < slots; ++t) {
        const auto r = static_cast<std::size_t>(rng.below(t + 1));
        if (!picked.insert(r).second) picked.insert(t);
    }

    std::vector<Entry> entries;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n && j <= i + delta; ++j) entries.push_back({i, j, 1.0});
    }
    auto it = picked.begin();
    std::size_t row_start = 0;
    for (std::size_t i = 0; i < n && it != picked.end(); ++i) {
        const std::size_t first_j = i + delta + 1;
        const std::size_t len = first_j < n ? n - first_j : 0;
        while (it != picked.end() && *it < row_start + len) {
            entries.push_back({i, first_j + (*it - row_start), 1.0});
            ++it;
        }
        row_start += len;
    }
    return SimilarityMatrix(n, std::move(entries));
}

BandedInstance gen_banded(std::size_t n, std::size_t delta, double s_ratio, std::uint64_t seed) {
    if (delta >= n) throw DomainError("gen_banded: need delta < n");
    if (!(s_ratio >= 0.0) || !std::isfinite(s_ratio)) throw DomainError("gen_banded: s_ratio must be >= 0");
    const auto s = static_cast<std::size_t>(std::llround(s_ratio * static_cast<double>(s_limit(n, delta))));
    Rng rng(seed);
    const SimilarityMatrix b = gen_band_with_outliers(n, delta, s, rng);
    auto order = identity_vector(n);
    rng.shuffle(order);
    const Permutation shuffle(std::move(order));
    return BandedInstance{b.permuted(shuffle), shuffle.inverse(), n, delta, s, seed};
}

bool is_band_with_outliers(const SimilarityMatrix& b, std::size_t delta, std::size_t s) {
    const std::size_t n = b.n();
    std::size_t in_band = 0, out_band = 0;
    for (const auto& e : b.entries()) {
        if (e.value != 1.0) return false;
        (e.j - e.i <= delta ? in_band : out_band) += 1;
    }
    std::size_t full_band = 0;
    for (std::size_t d = 0; d <= delta && d < n; ++d) full_band += n - d;
    return in_band == full_band && out_band == s;
}

StrongRMatrix gen_toeplitz_powerlaw(std::size_t n, double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("gen_toeplitz_powerlaw: gamma must be positive");
    const auto nn = static_cast<Index>(n);
    MatrixXd s(nn, nn);
    for (Index k = 0; k < nn; ++k) {
        for (Index l = 0; l < nn; ++l) {
            s(k, l) = k == l ? 1.0 : std::pow(static_cast<double>(std::abs(k - l)), -gamma);
        }
    }
    return StrongRMatrix(std::move(s));
}

DuplicationCounts random_counts(std::size_t n, std::size_t total, Rng& rng) {
    if (n == 0 || total < n) throw DomainError("random_counts: need 1 <= n <= total");
    std::vector<std::size_t> c(n, 1);
    for (std::size_t extra = 0; extra < total - n; ++extra) c[static_cast<std::size_t>(rng.below(n))] += 1;
    return DuplicationCounts(std::move(c));
}

DupliInstance gen_dupli_instance(std::size_t big_n, double ratio, const DupliMatrixKind& kind, double noise_prop,
                                 std::uint64_t seed) {
    if (!(ratio >= 1.0) || !std::isfinite(ratio)) throw DomainError("gen_dupli_instance: ratio must be >= 1");
    if (!(noise_prop >= 0.0) || !std::isfinite(noise_prop)) throw DomainError("gen_dupli_instance: noise must be >= 0");
    const auto n = static_cast<std::size_t>(std::llround(static_cast<double>(big_n) / ratio));
    if (n < 2 || n > big_n) throw DomainError("gen_dupli_instance: ratio leaves fewer than two bins");

    Rng rng(seed);
    MatrixXd s_true;
    if (const auto* p = std::get_if<PowerLawKind>(&kind)) {
        s_true = gen_toeplitz_powerlaw(big_n, p->gamma).values();
    } else {
        const auto& b = std::get<BandedKind>(kind);
        if (b.delta >= big_n) throw DomainError("gen_dupli_instance: need delta < N");
        s_true = gen_band_with_outliers(big_n, b.delta, b.s, rng).dense();
    }

    DuplicationCounts counts = random_counts(n, big_n, rng);
    auto positions = identity_vector(big_n);
    rng.shuffle(positions);
    std::vector<std::vector<std::size_t>> lists(n);
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < counts[i]; ++r) lists[i].push_back(positions[next++]);
    }
    AssignmentMatrix z_true(counts, std::move(lists));

    MatrixXd a = compress(z_true, s_true);
    if (noise_prop > 0.0) {
        for (Index i = 0; i < a.rows(); ++i) {
            for (Index j = i; j < a.cols(); ++j) {
                const double e = rng.uniform(-1.0, 1.0);
                const double v = std::max(0.0, a(i, j) * (1.0 + noise_prop * e));
                a(i, j) = v;
                a(j, i) = v;
            }
        }
    }
    return DupliInstance{std::move(s_true), std::move(counts), std::move(z_true), SimilarityMatrix::from_dense(a),
                         noise_prop, seed};
}

}  // namespace seriation
