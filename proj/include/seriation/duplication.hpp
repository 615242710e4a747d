#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "seriation/permutation.hpp"
#include "seriation/projections.hpp"
#include "seriation/similarity_matrix.hpp"

namespace seriation {

/// Number of fragments c_i >= 1 behind each of the n observed bins.
class DuplicationCounts {
public:
    explicit DuplicationCounts(std::vector<std::size_t> counts);

    /// c = 1: every bin holds exactly one fragment.
    static DuplicationCounts ones(std::size_t n) { return DuplicationCounts(std::vector<std::size_t>(n, 1)); }

    std::size_t size() const noexcept { return c_.size(); }
    std::size_t total() const noexcept { return total_; }
    std::size_t operator[](std::size_t i) const { return c_[i]; }
    std::span<const std::size_t> values() const noexcept { return c_; }

    friend bool operator==(const DuplicationCounts& a, const DuplicationCounts& b) { return a.c_ == b.c_; }

private:
    std::vector<std::size_t> c_;
    std::size_t total_ = 0;
};

/// Partition of the fragment positions [0, N) into bins, L_i of size c_i.
class AssignmentMatrix {
public:
    /// Validates the partition against `counts`; each list is stored sorted.
    AssignmentMatrix(DuplicationCounts counts, std::vector<std::vector<std::size_t>> lists);

    /// Fragments of bin 0 first, then bin 1, and so on.
    static AssignmentMatrix consecutive(const DuplicationCounts& counts);

    const DuplicationCounts& counts() const noexcept { return counts_; }
    std::size_t bins() const noexcept { return lists_.size(); }
    std::size_t fragments() const noexcept { return counts_.total(); }
    std::span<const std::size_t> list(std::size_t i) const { return lists_[i]; }
    const std::vector<std::vector<std::size_t>>& lists() const noexcept { return lists_; }

    /// Bin of every fragment position.
    std::vector<std::size_t> bin_of() const;

    /// Moves fragment k to position `perm.position(k)` (Z Πᵀ).
    AssignmentMatrix permuted(const Permutation& perm) const;

    /// Positions k -> N-1-k.
    AssignmentMatrix flipped() const;

    Eigen::MatrixXd dense() const;

    friend bool operator==(const AssignmentMatrix& a, const AssignmentMatrix& b) { return a.lists_ == b.lists_; }

private:
    DuplicationCounts counts_;
    std::vector<std::vector<std::size_t>> lists_;
};

/// S_kl = A_ij / (c_i c_j) for k in L_i, l in L_j.
Eigen::MatrixXd init_expand(const SimilarityMatrix& a, const DuplicationCounts& counts, const AssignmentMatrix& z0);

/// Z S Zᵀ: entry (i, j) sums S over L_i × L_j.
Eigen::MatrixXd compress(const AssignmentMatrix& z, const Eigen::MatrixXd& s);

/// Projects S onto {S' : Z S' Zᵀ = A, S' >= 0}, block by block.
Eigen::MatrixXd project_dupli_constraints(const Eigen::MatrixXd& s, const AssignmentMatrix& z,
                                          const SimilarityMatrix& a);

enum class InnerSolver { spectral, eta_spectral, h_ubi };

std::string to_string(InnerSolver s);
InnerSolver parse_inner_solver(const std::string& name);

struct DupliConfig {
    InnerSolver inner = InnerSolver::eta_spectral;
    std::size_t max_iter = 100;
    std::optional<DiagonalBounds> bounds;
    /// Huber width for the inner solver; default: estimated from S each round.
    std::optional<double> inner_delta;
};

enum class DupliStop { z_fixed_point, max_iter };

struct DupliReport {
    AssignmentMatrix z;
    Eigen::MatrixXd s;
    double feasibility_residual = 0.0;  // ‖Z S Zᵀ - A‖_F
    std::size_t iterations = 0;
    DupliStop converged_by = DupliStop::max_iter;
    double elapsed_seconds = 0.0;
};

/// Alternating projections between strong-R matrices and the duplication
/// constraints, reordering the fragments with `cfg.inner` at every round.
///
/// Round t: order S with the inner solver, move Z with the same
/// permutation, take the l1 strong-R projection of the reordered S, then
/// project back onto Z S Zᵀ = A. Stops when Z no longer changes.
DupliReport alt_proj_dupli(const SimilarityMatrix& a, const DuplicationCounts& counts, const DupliConfig& cfg = {});

struct DistanceSummary {
    double mean = 0.0;
    double stddev = 0.0;  // population standard deviation
    double median = 0.0;
};

/// Per bin, the mean position gap of an optimal matching between L_i and
/// L_i^out; summarised over bins.
DistanceSummary mean_assignment_distance(const AssignmentMatrix& z_true, const AssignmentMatrix& z_out);

/// The smaller of the above for z_out and z_out.flipped(), by mean.
DistanceSummary aligned_assignment_distance(const AssignmentMatrix& z_true, const AssignmentMatrix& z_out);

/// ‖S_out - S_true‖_F / ‖S_true‖_F, minimised over reversing S_out.
double relative_frobenius_aligned(const Eigen::MatrixXd& s_true, const Eigen::MatrixXd& s_out);

}  // namespace seriation
