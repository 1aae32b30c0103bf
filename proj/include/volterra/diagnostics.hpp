#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "volterra/grid.hpp"
#include "volterra/kernels.hpp"
#include "volterra/solver.hpp"

namespace volterra {

/// Empirical convergence order from a trace: the least-squares fit of
/// log(e_{k+1}) = log(C) + p * log(e_k) over the window [window_begin,
/// window_end] of iteration indices.
struct ConvergenceEstimate {
    Real fitted_order;
    Real fitted_constant;
    std::size_t window_begin;
    std::size_t window_end;
};

/// Fits the convergence order of the successive-difference sequence. Only
/// diffs above the noise floor 10^(-target_digits+3) enter; the window is
/// the longest strictly decreasing run among them. Fewer than 4 usable
/// iterations or a window shorter than 3 raise DiagnosticsError.
ConvergenceEstimate estimate_rate(const IterationTrace& trace);

struct LadderLevel {
    int digits;
    bool converged = false;
    bool diverged = false;
    std::size_t iterations = 0;
    /// Set when the solve threw instead of returning.
    std::string error;
    std::optional<SolutionVector> solution;
};

struct LadderResult {
    std::vector<LadderLevel> levels;
    /// deviations[i] = sup-norm distance between the solutions at level i
    /// and level i+1; nan when either level failed.
    std::vector<Real> deviations;
};

/// Re-solves the same discrete problem at each precision in digit_levels
/// (ascending) and reports the sup-norm deviation between consecutive
/// levels. Per-level quadrature targets and tolerance floors scale with
/// that level's digits; cfg supplies everything else.
LadderResult precision_ladder(const ProblemSpec& problem, const Grid& grid,
                              const SolverConfig& cfg, const std::vector<int>& digit_levels);

}  // namespace volterra
