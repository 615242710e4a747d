#include "seriation/duplication.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "seriation/bandwidth.hpp"
#include "seriation/error.hpp"
#include "seriation/kendall.hpp"
#include "seriation/linear_assignment.hpp"
#include "seriation/solvers.hpp"

namespace seriation {

using Eigen::Index;
using Eigen::MatrixXd;

DuplicationCounts::DuplicationCounts(std::vector<std::size_t> counts) : c_(std::move(counts)) {
    for (std::size_t v : c_) {
        if (v == 0) throw DomainError("duplication counts must be >= 1");
        total_ += v;
    }
}

AssignmentMatrix::AssignmentMatrix(DuplicationCounts counts, std::vector<std::vector<std::size_t>> lists)
    : counts_(std::move(counts)), lists_(std::move(lists)) {
    if (lists_.size() != counts_.size()) throw DimensionError("assignment: one list per bin required");
    std::vector<char> seen(counts_.total(), 0);
    for (std::size_t i = 0; i < lists_.size(); ++i) {
        auto& l = lists_[i];
        if (l.size() != counts_[i]) throw DomainError("assignment: list size differs from count");
        std::sort(l.begin(), l.end());
        for (std::size_t k : l) {
            if (k >= seen.size()) throw DomainError("assignment: fragment position out of range");
            if (seen[k]) throw DomainError("assignment: fragment assigned twice");
            seen[k] = 1;
        }
    }
}

AssignmentMatrix AssignmentMatrix::consecutive(const DuplicationCounts& counts) {
    std::vector<std::vector<std::size_t>> lists(counts.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        for (std::size_t r = 0; r < counts[i]; ++r) lists[i].push_back(next++);
    }
    return AssignmentMatrix(counts, std::move(lists));
}

std::vector<std::size_t> AssignmentMatrix::bin_of() const {
    std::vector<std::size_t> out(fragments());
    for (std::size_t i = 0; i < lists_.size(); ++i) {
        for (std::size_t k : lists_[i]) out[k] = i;
    }
    return out;
}

AssignmentMatrix AssignmentMatrix::permuted(const Permutation& perm) const {
    if (perm.size() != fragments()) throw DimensionError("assignment: permutation size mismatch");
    auto lists = lists_;
    for (auto& l : lists) {
        for (auto& k : l) k = perm.position(k);
    }
    return AssignmentMatrix(counts_, std::move(lists));
}

AssignmentMatrix AssignmentMatrix::flipped() const {
    auto lists = lists_;
    const std::size_t last = fragments() - 1;
    for (auto& l : lists) {
        for (auto& k : l) k = last - k;
    }
    return AssignmentMatrix(counts_, std::move(lists));
}

MatrixXd AssignmentMatrix::dense() const {
    MatrixXd z = MatrixXd::Zero(static_cast<Index>(bins()), static_cast<Index>(fragments()));
    for (std::size_t i = 0; i < lists_.size(); ++i) {
        for (std::size_t k : lists_[i]) z(static_cast<Index>(i), static_cast<Index>(k)) = 1.0;
    }
    return z;
}

MatrixXd init_expand(const SimilarityMatrix& a, const DuplicationCounts& counts, const AssignmentMatrix& z0) {
    if (a.n() != counts.size()) throw DimensionError("init_expand: A and c disagree on n");
    if (!(z0.counts() == counts)) throw DimensionError("init_expand: Z0 does not match c");
    const MatrixXd ad = a.dense();
    const auto bin = z0.bin_of();
    const auto big = static_cast<Index>(counts.total());
    MatrixXd s(big, big);
    for (Index k = 0; k < big; ++k) {
        const std::size_t i = bin[static_cast<std::size_t>(k)];
        for (Index l = 0; l < big; ++l) {
            const std::size_t j = bin[static_cast<std::size_t>(l)];
            s(k, l) = ad(static_cast<Index>(i), static_cast<Index>(j)) / static_cast<double>(counts[i] * counts[j]);
        }
    }
    return s;
}

MatrixXd compress(const AssignmentMatrix& z, const MatrixXd& s) {
    const auto big = static_cast<Index>(z.fragments());
    if (s.rows() != big || s.cols() != big) throw DimensionError("compress: S size differs from N");
    const auto n = static_cast<Index>(z.bins());
    MatrixXd a(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i; j < n; ++j) {
            double sum = 0.0;
            for (std::size_t k : z.list(static_cast<std::size_t>(i))) {
                for (std::size_t l : z.list(static_cast<std::size_t>(j))) sum += s(static_cast<Index>(k), static_cast<Index>(l));
            }
            a(i, j) = sum;
            a(j, i) = sum;
        }
    }
    return a;
}

MatrixXd project_dupli_constraints(const MatrixXd& s, const AssignmentMatrix& z, const SimilarityMatrix& a) {
    const auto big = static_cast<Index>(z.fragments());
    if (s.rows() != big || s.cols() != big) throw DimensionError("project_dupli_constraints: S size differs from N");
    if (a.n() != z.bins()) throw DimensionError("project_dupli_constraints: A size differs from n");
    const MatrixXd ad = a.dense();
    MatrixXd out(big, big);
    std::vector<double> block;
    for (std::size_t i = 0; i < z.bins(); ++i) {
        const auto li = z.list(i);
        for (std::size_t j = i; j < z.bins(); ++j) {
            const auto lj = z.list(j);
            block.clear();
            for (std::size_t k : li) {
                for (std::size_t l : lj) block.push_back(s(static_cast<Index>(k), static_cast<Index>(l)));
            }
            const auto x = project_sum_nonneg(block, ad(static_cast<Index>(i), static_cast<Index>(j)));
            std::size_t t = 0;
            for (std::size_t k : li) {
                for (std::size_t l : lj) {
                    out(static_cast<Index>(k), static_cast<Index>(l)) = x[t];
                    if (i != j) out(static_cast<Index>(l), static_cast<Index>(k)) = x[t];
                    ++t;
                }
            }
        }
    }
    // Averaging mirrored pairs keeps each diagonal block's sum and removes
    // rounding asymmetry.
    for (std::size_t i = 0; i < z.bins(); ++i) {
        const auto li = z.list(i);
        for (std::size_t p = 0; p < li.size(); ++p) {
            for (std::size_t q = p + 1; q < li.size(); ++q) {
                const auto k = static_cast<Index>(li[p]);
                const auto l = static_cast<Index>(li[q]);
                const double v = 0.5 * (out(k, l) + out(l, k));
                out(k, l) = v;
                out(l, k) = v;
            }
        }
    }
    return out;
}

std::string to_string(InnerSolver s) {
    switch (s) {
        case InnerSolver::spectral: return "spectral";
        case InnerSolver::eta_spectral: return "eta-spectral";
        case InnerSolver::h_ubi: return "h-ubi";
    }
    return "?";
}

InnerSolver parse_inner_solver(const std::string& name) {
    for (auto s : {InnerSolver::spectral, InnerSolver::eta_spectral, InnerSolver::h_ubi}) {
        if (name == to_string(s)) return s;
    }
    throw DomainError("unknown inner solver '" + name + "'");
}

namespace {

Permutation run_inner(const SimilarityMatrix& s, InnerSolver inner, std::optional<double> delta) {
    if (!delta) delta = static_cast<double>(estimate_bandwidth(s).delta);
    switch (inner) {
        case InnerSolver::spectral: return spectral_order(s).permutation;
        case InnerSolver::eta_spectral: {
            EtaSpectralConfig cfg;
            cfg.delta = delta;
            return eta_spectral(s, cfg).permutation;
        }
        case InnerSolver::h_ubi: return ubi(s, Huber{*delta}).permutation;
    }
    throw DomainError("unknown inner solver");
}

double frobenius_residual(const AssignmentMatrix& z, const MatrixXd& s, const SimilarityMatrix& a) {
    return (compress(z, s) - a.dense()).norm();
}

}  // namespace

DupliReport alt_proj_dupli(const SimilarityMatrix& a, const DuplicationCounts& counts, const DupliConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    if (a.n() != counts.size()) throw DimensionError("alt_proj_dupli: A and c disagree on n");
    if (cfg.max_iter < 1) throw DomainError("alt_proj_dupli: need at least one round");

    DupliReport rep{AssignmentMatrix::consecutive(counts), MatrixXd(), 0.0, 0, DupliStop::max_iter, 0.0};
    rep.s = init_expand(a, counts, rep.z);
    const std::size_t big = counts.total();

    for (std::size_t t = 0; t < cfg.max_iter; ++t) {
        Permutation perm;
        try {
            perm = run_inner(SimilarityMatrix::from_dense(rep.s), cfg.inner, cfg.inner_delta);
        } catch (const ConvergenceError& e) {
            throw ConvergenceError("round " + std::to_string(t) + ": " + e.what(), e.last_residual());
        }
        // All objectives are flip invariant; keep the orientation closest to
        // the current one so that a stable order is recognised as a fixed point.
        if (kendall_tau(perm, Permutation::identity(big), false) < 0.0) perm = perm.flipped();

        MatrixXd r(static_cast<Index>(big), static_cast<Index>(big));
        for (std::size_t p = 0; p < big; ++p) {
            for (std::size_t q = 0; q < big; ++q) {
                r(static_cast<Index>(p), static_cast<Index>(q)) =
                    rep.s(static_cast<Index>(perm.element_at(p)), static_cast<Index>(perm.element_at(q)));
            }
        }
        AssignmentMatrix z_next = rep.z.permuted(perm);
        const auto projected = project_strong_r(r, Norm::l1, cfg.bounds);
        rep.s = project_dupli_constraints(projected.values(), z_next, a);
        rep.iterations = t + 1;
        const bool fixed = z_next == rep.z;
        rep.z = std::move(z_next);
        if (fixed) {
            rep.converged_by = DupliStop::z_fixed_point;
            break;
        }
    }
    rep.feasibility_residual = frobenius_residual(rep.z, rep.s, a);
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

DistanceSummary mean_assignment_distance(const AssignmentMatrix& z_true, const AssignmentMatrix& z_out) {
    if (!(z_true.counts() == z_out.counts())) throw DimensionError("mean_assignment_distance: counts differ");
    std::vector<double> per_bin(z_true.bins());
    for (std::size_t i = 0; i < z_true.bins(); ++i) {
        const auto lt = z_true.list(i);
        const auto lo = z_out.list(i);
        const auto m = static_cast<Index>(lt.size());
        MatrixXd cost(m, m);
        for (Index p = 0; p < m; ++p) {
            for (Index q = 0; q < m; ++q) {
                cost(p, q) = std::abs(static_cast<double>(lt[static_cast<std::size_t>(p)]) -
                                      static_cast<double>(lo[static_cast<std::size_t>(q)]));
            }
        }
        const CostMatrix cm(cost);
        per_bin[i] = assignment_cost(cm, linear_assignment(cm)) / static_cast<double>(m);
    }
    DistanceSummary out;
    const double nb = static_cast<double>(per_bin.size());
    out.mean = std::accumulate(per_bin.begin(), per_bin.end(), 0.0) / nb;
    double var = 0.0;
    for (double v : per_bin) var += (v - out.mean) * (v - out.mean);
    out.stddev = std::sqrt(var / nb);
    std::sort(per_bin.begin(), per_bin.end());
    const std::size_t h = per_bin.size() / 2;
    out.median = per_bin.size() % 2 ? per_bin[h] : 0.5 * (per_bin[h - 1] + per_bin[h]);
    return out;
}

DistanceSummary aligned_assignment_distance(const AssignmentMatrix& z_true, const AssignmentMatrix& z_out) {
    const auto direct = mean_assignment_distance(z_true, z_out);
    const auto flipped = mean_assignment_distance(z_true, z_out.flipped());
    return flipped.mean < direct.mean ? flipped : direct;
}

double relative_frobenius_aligned(const MatrixXd& s_true, const MatrixXd& s_out) {
    if (s_true.rows() != s_out.rows() || s_true.cols() != s_out.cols()) {
        throw DimensionError("relative_frobenius_aligned: size mismatch");
    }
    const double denom = s_true.norm();
    if (!(denom > 0.0)) throw DomainError("relative_frobenius_aligned: S_true is zero");
    const MatrixXd rev = s_out.reverse();
    return std::min((s_out - s_true).norm(), (rev - s_true).norm()) / denom;
}

}  // namespace seriation
