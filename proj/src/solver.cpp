#include "volterra/solver.hpp"

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include "volterra/interp.hpp"

namespace volterra {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void validate_config(const SolverConfig& cfg) {
    const PrecisionContext& ctx = cfg.precision;
    if (!(cfg.tolerance > Real::zero(ctx))) {
        throw ConfigError("solver tolerance must be positive, got " +
                          cfg.tolerance.to_decimal());
    }
    const Real floor = Real::pow10(-cfg.rule.target_digits + 2, ctx);
    if (cfg.tolerance < floor) {
        throw ConfigError("solver tolerance " + cfg.tolerance.to_decimal() +
                          " is below the quadrature noise margin " + floor.to_decimal() +
                          "; tighten the quadrature target or relax the tolerance");
    }
    if (cfg.max_iter < 1) {
        throw ConfigError("max_iter must be at least 1, got " +
                          std::to_string(cfg.max_iter));
    }
}

Real trace_norm(const SolutionVector& r) {
    Real best = abs(r[0]);
    for (std::size_t i = 1; i < r.size(); ++i) {
        Real m = abs(r[i]);
        if (m > best) best = std::move(m);
    }
    return best;
}

// Watches successive differences for sustained sharp growth; three
// consecutive x10 jumps mean the iteration is blowing up, not converging.
class DivergenceWatch {
public:
    explicit DivergenceWatch(const PrecisionContext& ctx)
        : last_(Real::nan(ctx)), growths_(0) {}

    bool feed(const Real& diff) {
        if (!last_.is_nan() && diff > 10L * last_) {
            ++growths_;
        } else {
            growths_ = 0;
        }
        last_ = diff;
        return growths_ >= 3;
    }

private:
    Real last_;
    int growths_;
};

}  // namespace

SolverConfig SolverConfig::defaults(const PrecisionContext& ctx) {
    QuadratureRule rule = QuadratureRule::defaults(ctx);
    return SolverConfig{
        Scheme::Newton,
        Real::pow10(-rule.target_digits + 2, ctx),
        50,
        ctx,
        rule,
    };
}

SolutionVector default_initial_guess(const ProblemSpec& problem, const Grid& grid,
                                     const PrecisionContext& ctx) {
    const Real g0 = problem.inhomogeneous(grid.node(0)).to_context(ctx);
    return SolutionVector::constant(std::make_shared<const Grid>(grid), g0);
}

SolutionVector residual(const ProblemSpec& problem, const SolutionVector& u,
                        const QuadratureRule& rule) {
    const Grid& grid = u.grid();
    std::vector<Real> values;
    values.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Real& t_i = grid.node(i);
        Real f_i = u[i] - problem.inhomogeneous(t_i);
        if (i > 0) {
            const Integrand integrand = [&problem, &t_i, &u](const Real& s) {
                return problem.kernel.eval(t_i, s, interp(s, u));
            };
            f_i -= integrate_piecewise(integrand, grid, i, rule);
        }
        values.push_back(std::move(f_i));
    }
    return SolutionVector(u.grid_ptr(), std::move(values));
}

DenseMatrix assemble_frechet_matrix(const ProblemSpec& problem, const SolutionVector& u,
                                    const QuadratureRule& rule) {
    const Grid& grid = u.grid();
    const std::size_t n = grid.size();
    const int digits = u[0].context().decimal_digits();
    const PrecisionContext ctx(digits > rule.target_digits + 5 ? digits
                                                               : rule.target_digits + 5);
    DenseMatrix A = DenseMatrix::identity(n, ctx);

    for (std::size_t i = 1; i < n; ++i) {
        const Real& t_i = grid.node(i);
        for (std::size_t k = 0; k < i; ++k) {
            // Only the two hat functions alive on [t_k, t_{k+1}] contribute;
            // the kernel derivative is evaluated once per quadrature node
            // and shared between them.
            const PairIntegrand pair_fn = [&problem, &t_i, &u, &grid, k](const Real& s) {
                const Real dk = problem.kernel.eval_du(t_i, s, interp(s, u));
                return std::pair<Real, Real>(dk * hat_function(k, s, grid),
                                             dk * hat_function(k + 1, s, grid));
            };
            const auto [left, right] =
                integrate_pair(pair_fn, grid.node(k), grid.node(k + 1), rule);
            A.at(i, k) -= left;
            A.at(i, k + 1) -= right;
        }
    }
    return A;
}

SolveResult picard_solve(const ProblemSpec& problem, const SolutionVector& u0,
                         const SolverConfig& cfg) {
    validate_config(cfg);
    const PrecisionContext& ctx = cfg.precision;
    const Grid& grid = u0.grid();
    const Real g0 = problem.inhomogeneous(grid.node(0)).to_context(ctx);
    const Real nan = Real::nan(ctx);

    std::vector<Real> current;
    current.reserve(grid.size());
    for (std::size_t i = 0; i < u0.size(); ++i) current.push_back(u0[i].to_context(ctx));

    SolveResult result{SolutionVector(u0.grid_ptr(), current), {}, false, false, 0};
    result.trace.target_digits = cfg.rule.target_digits;
    DivergenceWatch watch(ctx);

    for (int k = 0; k < cfg.max_iter; ++k) {
        const auto started = Clock::now();
        SolutionVector u(u0.grid_ptr(), current);
        std::vector<Real> next;
        next.reserve(grid.size());
        next.push_back(g0);
        Real diff = abs(next[0] - current[0]);
        try {
            for (std::size_t i = 1; i < grid.size(); ++i) {
                const Real& t_i = grid.node(i);
                const Integrand integrand = [&problem, &t_i, &u](const Real& s) {
                    return problem.kernel.eval(t_i, s, interp(s, u));
                };
                Real value = problem.inhomogeneous(t_i) +
                             integrate_piecewise(integrand, grid, i, cfg.rule);
                next.push_back(value.to_context(ctx));
                Real d = abs(next[i] - current[i]);
                if (d > diff) diff = std::move(d);
            }
        } catch (const AccuracyError& e) {
            throw SolverAbortError(std::string("iteration ") + std::to_string(k) +
                                       " stopped: " + e.what(),
                                   static_cast<std::size_t>(k), std::move(result.trace));
        } catch (const OverflowError&) {
            result.diverged = true;
            break;
        }

        // The update map is u_next = g + integral(u), so this difference is
        // exactly the residual norm of the previous iterate.
        if (k > 0) result.trace.records[static_cast<std::size_t>(k) - 1].residual_norm = diff;
        result.trace.records.push_back(
            {static_cast<std::size_t>(k), diff, nan, seconds_since(started)});
        current = std::move(next);

        if (watch.feed(diff)) {
            result.diverged = true;
            break;
        }
        if (diff < cfg.tolerance) {
            result.converged = true;
            break;
        }
    }

    result.solution = SolutionVector(u0.grid_ptr(), std::move(current));
    result.iterations_used = result.trace.records.size();
    if (!result.diverged && !result.trace.records.empty()) {
        try {
            result.trace.records.back().residual_norm =
                trace_norm(residual(problem, result.solution, cfg.rule));
        } catch (const AccuracyError&) {
            // The trace keeps its nan placeholder; the solve itself stands.
        } catch (const OverflowError&) {
        }
    }
    return result;
}

SolveResult newton_solve(const ProblemSpec& problem, const SolutionVector& u0,
                         const SolverConfig& cfg) {
    validate_config(cfg);
    const PrecisionContext& ctx = cfg.precision;
    const Grid& grid = u0.grid();
    const Real g0 = problem.inhomogeneous(grid.node(0)).to_context(ctx);
    const Real nan = Real::nan(ctx);

    std::vector<Real> current;
    current.reserve(grid.size());
    for (std::size_t i = 0; i < u0.size(); ++i) current.push_back(u0[i].to_context(ctx));

    SolveResult result{SolutionVector(u0.grid_ptr(), current), {}, false, false, 0};
    result.trace.target_digits = cfg.rule.target_digits;
    DivergenceWatch watch(ctx);

    for (int k = 0; k < cfg.max_iter; ++k) {
        const auto started = Clock::now();
        SolutionVector u(u0.grid_ptr(), current);
        std::vector<Real> delta;
        try {
            SolutionVector r = residual(problem, u, cfg.rule);
            if (k > 0) {
                result.trace.records[static_cast<std::size_t>(k) - 1].residual_norm =
                    trace_norm(r).to_context(ctx);
            }
            DenseMatrix A = assemble_frechet_matrix(problem, u, cfg.rule);
            std::vector<Real> rhs;
            rhs.reserve(r.size());
            for (std::size_t i = 0; i < r.size(); ++i) rhs.push_back(-r[i]);
            delta = solve_linear(A, rhs);
        } catch (const AccuracyError& e) {
            throw SolverAbortError(std::string("iteration ") + std::to_string(k) +
                                       " stopped: " + e.what(),
                                   static_cast<std::size_t>(k), std::move(result.trace));
        } catch (const SingularMatrixError& e) {
            throw SingularMatrixError(std::string(e.what()) + " at iteration " +
                                          std::to_string(k),
                                      k);
        } catch (const OverflowError&) {
            result.diverged = true;
            break;
        }

        Real diff = abs(delta[0]);
        for (std::size_t i = 1; i < delta.size(); ++i) {
            Real m = abs(delta[i]);
            if (m > diff) diff = std::move(m);
        }
        diff = diff.to_context(ctx);

        for (std::size_t i = 0; i < current.size(); ++i) {
            current[i] = (current[i] + delta[i]).to_context(ctx);
        }
        current[0] = g0;

        result.trace.records.push_back(
            {static_cast<std::size_t>(k), diff, nan, seconds_since(started)});

        if (watch.feed(diff)) {
            result.diverged = true;
            break;
        }
        if (diff < cfg.tolerance) {
            result.converged = true;
            break;
        }
    }

    result.solution = SolutionVector(u0.grid_ptr(), std::move(current));
    result.iterations_used = result.trace.records.size();
    if (!result.diverged && !result.trace.records.empty()) {
        try {
            result.trace.records.back().residual_norm =
                trace_norm(residual(problem, result.solution, cfg.rule)).to_context(ctx);
        } catch (const AccuracyError&) {
        } catch (const OverflowError&) {
        }
    }
    return result;
}

SolveResult solve(const ProblemSpec& problem, const SolutionVector& u0,
                  const SolverConfig& cfg) {
    return cfg.scheme == Scheme::Picard ? picard_solve(problem, u0, cfg)
                                        : newton_solve(problem, u0, cfg);
}

}  // namespace volterra
