#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "volterra/diagnostics.hpp"
#include "volterra/errors.hpp"
#include "volterra/grid.hpp"
#include "volterra/kernels.hpp"
#include "volterra/solver.hpp"

namespace py = pybind11;

namespace {

using volterra::Grid;
using volterra::PrecisionContext;
using volterra::ProblemSpec;
using volterra::Real;
using volterra::SolverConfig;

ProblemSpec problem_from(const std::string& kernel,
                         const std::map<std::string, std::string>& params,
                         const std::string& t_end, const PrecisionContext& ctx) {
    std::map<std::string, Real> converted;
    for (const auto& [key, value] : params) {
        converted.emplace(key, Real::from_decimal(value, ctx));
    }
    return make_problem(kernel, converted, Real::from_decimal(t_end, ctx));
}

SolverConfig config_from(const std::string& scheme, const std::string& tol, int max_iter,
                         const PrecisionContext& ctx) {
    if (scheme != "picard" && scheme != "newton") {
        throw volterra::ConfigError("scheme must be picard or newton, got \"" + scheme +
                                    "\"");
    }
    SolverConfig cfg = SolverConfig::defaults(ctx);
    if (!tol.empty()) cfg.tolerance = Real::from_decimal(tol, ctx);
    cfg.max_iter = max_iter;
    cfg.scheme = scheme == "picard" ? volterra::Scheme::Picard : volterra::Scheme::Newton;
    return cfg;
}

py::list trace_to_list(const volterra::IterationTrace& trace) {
    py::list records;
    for (const volterra::IterationRecord& rec : trace.records) {
        py::dict row;
        row["iteration"] = rec.iteration;
        row["successive_diff"] = rec.successive_diff.to_decimal();
        row["residual_norm"] = rec.residual_norm.to_decimal();
        row["wall_time_s"] = rec.wall_time_s;
        records.append(row);
    }
    return records;
}

py::dict solve_py(const std::string& kernel,
                  const std::map<std::string, std::string>& params, const std::string& t_end,
                  const std::string& step, const std::string& scheme, int precision,
                  const std::string& tol, int max_iter) {
    const PrecisionContext ctx(precision);
    const ProblemSpec problem = problem_from(kernel, params, t_end, ctx);
    const Grid grid = Grid::uniform(problem.t_end, Real::from_decimal(step, ctx));
    const SolverConfig cfg = config_from(scheme, tol, max_iter, ctx);

    const volterra::SolveResult result = [&] {
        py::gil_scoped_release unlock;
        return solve(problem, default_initial_guess(problem, grid, ctx), cfg);
    }();

    py::dict out;
    py::list ts, us;
    for (std::size_t i = 0; i < result.solution.size(); ++i) {
        ts.append(result.solution.grid().node(i).to_decimal());
        us.append(result.solution[i].to_decimal());
    }
    out["t"] = ts;
    out["u"] = us;
    out["converged"] = result.converged;
    out["diverged"] = result.diverged;
    out["iterations"] = result.iterations_used;
    out["trace"] = trace_to_list(result.trace);
    out["quadrature_target_digits"] = result.trace.target_digits;
    return out;
}

py::dict estimate_rate_py(const std::vector<std::string>& successive_diffs, int precision,
                          int target_digits) {
    const PrecisionContext ctx(precision);
    volterra::IterationTrace trace;
    trace.target_digits = target_digits;
    for (std::size_t k = 0; k < successive_diffs.size(); ++k) {
        trace.records.push_back(
            {k, Real::from_decimal(successive_diffs[k], ctx), Real::nan(ctx), 0.0});
    }
    const volterra::ConvergenceEstimate est = estimate_rate(trace);
    py::dict out;
    out["order"] = est.fitted_order.to_decimal();
    out["constant"] = est.fitted_constant.to_decimal();
    out["window_begin"] = est.window_begin;
    out["window_end"] = est.window_end;
    return out;
}

py::dict precision_ladder_py(const std::string& kernel,
                             const std::map<std::string, std::string>& params,
                             const std::string& t_end, const std::string& step,
                             const std::vector<int>& digit_levels, const std::string& scheme,
                             int precision, const std::string& tol, int max_iter) {
    int wide = precision;
    for (const int digits : digit_levels) wide = std::max(wide, digits);
    const PrecisionContext ctx(wide);
    const ProblemSpec problem = problem_from(kernel, params, t_end, ctx);
    const Grid grid = Grid::uniform(problem.t_end, Real::from_decimal(step, ctx));
    const SolverConfig cfg = config_from(scheme, tol, max_iter, PrecisionContext(precision));

    const volterra::LadderResult ladder = [&] {
        py::gil_scoped_release unlock;
        return precision_ladder(problem, grid, cfg, digit_levels);
    }();

    py::dict out;
    py::list levels;
    for (const volterra::LadderLevel& level : ladder.levels) {
        py::dict row;
        row["digits"] = level.digits;
        row["converged"] = level.converged;
        row["diverged"] = level.diverged;
        row["iterations"] = level.iterations;
        row["error"] = level.error;
        levels.append(row);
    }
    py::list deviations;
    for (const Real& dev : ladder.deviations) deviations.append(dev.to_decimal());
    out["levels"] = levels;
    out["deviations"] = deviations;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Arbitrary-precision solver for nonlinear Volterra integral equations of "
              "the second kind (Picard and Newton-Kantorovich schemes). Scalars cross "
              "the boundary as decimal strings so no precision is lost.";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const volterra::ConfigError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const volterra::ParseError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const volterra::DomainError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const volterra::ShapeError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const volterra::ExtrapolationError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const volterra::OverflowError& e) {
            PyErr_SetString(PyExc_OverflowError, e.what());
        } catch (const volterra::Error& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        }
    });

    m.def("registered_kernels", &volterra::registered_kernels,
          "Kernel names accepted by solve() and precision_ladder().");

    m.def("solve", &solve_py, py::arg("kernel"), py::arg("params"), py::arg("t_end"),
          py::arg("step"), py::arg("scheme") = "newton", py::arg("precision") = 50,
          py::arg("tol") = "", py::arg("max_iter") = 50,
          "Solve u(t) = g(t) + integral of K(t, s, u(s)) on a uniform grid.\n\n"
          "params maps kernel parameter names to decimal strings (bratu: lambda, u0,\n"
          "uprime0; linear: a, b). Returns a dict with nodes 't', values 'u' (decimal\n"
          "strings), 'converged', 'diverged', 'iterations', and the iteration 'trace'.");

    m.def("estimate_rate", &estimate_rate_py, py::arg("successive_diffs"),
          py::arg("precision") = 50, py::arg("target_digits") = 45,
          "Fit successive-difference decay e_(k+1) ~ C * e_k^p; returns the fitted\n"
          "'order' and 'constant' plus the [window_begin, window_end] records used.");

    m.def("precision_ladder", &precision_ladder_py, py::arg("kernel"), py::arg("params"),
          py::arg("t_end"), py::arg("step"), py::arg("digit_levels"),
          py::arg("scheme") = "newton", py::arg("precision") = 50, py::arg("tol") = "",
          py::arg("max_iter") = 50,
          "Re-solve the same discrete problem at each digit level and report sup-norm\n"
          "deviations between consecutive levels.");

    m.attr("__version__") = "0.1.0";
}
