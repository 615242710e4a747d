#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace seriation {

/// Seedable generator with platform-independent sampling.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Distributions are implemented here because the standard library
/// ones are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound), bound > 0, by rejection.
    std::uint64_t below(std::uint64_t bound) {
        // 2^64 - threshold is a multiple of bound.
        const std::uint64_t threshold = (std::uint64_t{0} - bound) % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x < threshold);
        return x % bound;
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    /// Derives an independent seed for sub-stream `k`.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t k) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace seriation
