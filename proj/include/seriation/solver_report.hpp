#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "seriation/loss.hpp"
#include "seriation/permutation.hpp"

namespace seriation {

struct TracePoint {
    std::size_t iteration;
    double objective;
};

/// Shared output of every seriation solver.
struct SolverReport {
    Permutation permutation;
    LossKind loss_kind = TwoSum{};
    double objective = 0.0;        // loss(A, permutation, loss_kind)
    std::vector<TracePoint> trace;  // best-so-far objective per iteration
    std::size_t iterations = 0;
    double elapsed_seconds = 0.0;
    bool warning = false;  // set when a sub-step aborted and best-so-far was returned
    std::string note;
};

}  // namespace seriation
