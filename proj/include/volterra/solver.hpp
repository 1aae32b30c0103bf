#pragma once

#include <cstddef>
#include <vector>

#include "volterra/errors.hpp"
#include "volterra/grid.hpp"
#include "volterra/kernels.hpp"
#include "volterra/linalg.hpp"
#include "volterra/precision.hpp"
#include "volterra/quadrature.hpp"

namespace volterra {

enum class Scheme {
    Picard,
    Newton,
};

/// Iteration controls shared by both schemes. The tolerance applies to the
/// sup norm of successive differences and must sit at least two orders of
/// magnitude above the quadrature target, or stopping could chase noise.
struct SolverConfig {
    Scheme scheme = Scheme::Newton;
    Real tolerance;
    int max_iter = 50;
    PrecisionContext precision;
    QuadratureRule rule;

    /// Newton scheme at the given precision: tolerance 10^(-target+2)
    /// with the default quadrature rule for the context.
    static SolverConfig defaults(const PrecisionContext& ctx);
};

struct IterationRecord {
    std::size_t iteration;
    /// sup norm of u^(k+1) - u^(k) (for Newton, the correction norm).
    Real successive_diff;
    /// sup norm of the residual at u^(k+1); nan if never evaluated.
    Real residual_norm;
    double wall_time_s;
};

struct IterationTrace {
    std::vector<IterationRecord> records;
    /// Quadrature target the records were produced under; the rate-fitting
    /// noise floor derives from it.
    int target_digits = 45;
};

struct SolveResult {
    SolutionVector solution;
    IterationTrace trace;
    bool converged = false;
    /// Iterates grew without bound (successive differences rose sharply or
    /// the evaluation overflowed); converged is false.
    bool diverged = false;
    std::size_t iterations_used = 0;
};

/// Raised when an iteration cannot continue (quadrature failed to reach its
/// target); carries whatever trace was accumulated.
class SolverAbortError : public Error {
public:
    SolverAbortError(const std::string& message, std::size_t iteration, IterationTrace trace)
        : Error(message), iteration_(iteration), trace_(std::move(trace)) {}
    std::size_t iteration() const noexcept { return iteration_; }
    const IterationTrace& trace() const noexcept { return trace_; }

private:
    std::size_t iteration_;
    IterationTrace trace_;
};

/// Nodal residual F(u)(t_i) = u_i - g(t_i) - integral over [0, t_i] of
/// K(t_i, s, interp(u)(s)).
SolutionVector residual(const ProblemSpec& problem, const SolutionVector& u,
                        const QuadratureRule& rule);

/// A[i][j] = delta_ij - integral over [0, t_i] of dK/du(t_i, s, interp(u)(s))
/// times the j-th hat function. Row 0 is an identity row.
DenseMatrix assemble_frechet_matrix(const ProblemSpec& problem, const SolutionVector& u,
                                    const QuadratureRule& rule);

/// Constant initial iterate u = g(0), the scheme-agnostic default.
SolutionVector default_initial_guess(const ProblemSpec& problem, const Grid& grid,
                                     const PrecisionContext& ctx);

/// Successive approximation: u <- g + integral K(.,.,u). Linear rate.
SolveResult picard_solve(const ProblemSpec& problem, const SolutionVector& u0,
                         const SolverConfig& cfg);

/// Newton iteration on F(u) = 0: solve F'(u) delta = -F(u), u <- u + delta.
/// Quadratic rate near the solution.
SolveResult newton_solve(const ProblemSpec& problem, const SolutionVector& u0,
                         const SolverConfig& cfg);

/// Dispatches on cfg.scheme.
SolveResult solve(const ProblemSpec& problem, const SolutionVector& u0, const SolverConfig& cfg);

}  // namespace volterra
