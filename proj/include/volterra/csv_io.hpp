#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "volterra/diagnostics.hpp"
#include "volterra/grid.hpp"
#include "volterra/solver.hpp"

namespace volterra {

/// Header "t,u"; one row per node, values as full-precision decimal
/// strings that re-parse to the identical scalars.
void write_solution_csv(std::ostream& out, const SolutionVector& solution);

/// Header "iter,successive_diff,residual_norm,wall_time_s".
void write_trace_csv(std::ostream& out, const IterationTrace& trace);

struct SweepRow {
    Real lambda;
    bool converged = false;
    bool diverged = false;
    std::size_t iterations = 0;
    Real final_diff;
    /// Decimal string; empty when the trace was too short to fit.
    std::string fitted_order;
};

/// Header "lambda,converged,iterations,final_diff,fitted_order".
void write_sweep_summary_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Header "digits,converged,iterations,deviation_from_next"; the last
/// level's deviation column is empty.
void write_ladder_csv(std::ostream& out, const LadderResult& ladder);

}  // namespace volterra
