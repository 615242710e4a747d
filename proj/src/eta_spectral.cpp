#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "seriation/bandwidth.hpp"
#include "seriation/error.hpp"
#include "seriation/solvers.hpp"

namespace seriation {

SolverReport eta_spectral(const SimilarityMatrix& a, const EtaSpectralConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    if (!(cfg.gamma >= 0.0 && cfg.gamma < 1.0)) throw DomainError("eta_spectral: gamma must lie in [0, 1)");
    const double delta = cfg.delta ? *cfg.delta : static_cast<double>(estimate_bandwidth(a).delta);
    if (!(delta >= 1.0) || !std::isfinite(delta)) throw DomainError("eta_spectral: delta must be >= 1");
    const LossKind score_kind = Huber{delta};

    const auto entries = a.entries();
    std::vector<double> eta(entries.size(), delta);

    SolverReport rep;
    rep.loss_kind = score_kind;
    rep.objective = std::numeric_limits<double>::infinity();

    for (std::size_t t = 0; t <= cfg.max_iter; ++t) {
        Permutation perm;
        try {
            if (t == 0) {
                // η is constant, so A ./ η orders exactly like A.
                perm = spectral_order(a, cfg.fiedler).permutation;
            } else {
                std::size_t k = 0;
                const auto weighted =
                    a.reweighted([&](std::size_t, std::size_t, double v) { return v / eta[k++]; });
                perm = spectral_order(weighted, cfg.fiedler).permutation;
            }
        } catch (const ConvergenceError& e) {
            if (t == 0) throw;
            rep.warning = true;
            rep.note = std::string("stopped at round ") + std::to_string(t) + ": " + e.what();
            break;
        }
        const double score = loss(a, perm, score_kind);
        if (score < rep.objective) {
            rep.objective = score;
            rep.permutation = perm;
        }
        rep.trace.push_back({t, rep.objective});
        rep.iterations = t + 1;
        if (t == cfg.max_iter) break;

        for (std::size_t k = 0; k < entries.size(); ++k) {
            const auto& e = entries[k];
            const double gap = std::abs(static_cast<double>(perm.position(e.i)) - static_cast<double>(perm.position(e.j)));
            const double target = std::max(gap, delta);
            eta[k] = cfg.gamma * eta[k] + (1.0 - cfg.gamma) * target;
        }
    }
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace seriation
