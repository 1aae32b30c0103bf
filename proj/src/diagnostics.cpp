#include "volterra/diagnostics.hpp"

#include <string>
#include <utility>

#include "volterra/errors.hpp"

namespace volterra {

namespace {

struct Window {
    std::size_t begin = 0;
    std::size_t end = 0;  // inclusive
    std::size_t length() const { return end - begin + 1; }
};

}  // namespace

ConvergenceEstimate estimate_rate(const IterationTrace& trace) {
    const auto& records = trace.records;
    const std::string floor_text = "1e-" + std::to_string(trace.target_digits - 3);
    if (records.empty()) {
        throw DiagnosticsError("empty trace; nothing above the noise floor " + floor_text);
    }
    const PrecisionContext ctx = records[0].successive_diff.context();
    const Real floor = Real::pow10(-trace.target_digits + 3, ctx);

    std::vector<bool> usable(records.size());
    std::size_t usable_count = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const Real& d = records[i].successive_diff;
        usable[i] = d.is_finite() && d > floor;
        if (usable[i]) ++usable_count;
    }
    if (usable_count < 4) {
        throw DiagnosticsError("rate fitting needs at least 4 iterations above the noise floor " +
                               floor_text + ", found " + std::to_string(usable_count));
    }

    // Longest strictly decreasing run of consecutive usable diffs; later
    // runs win ties since they sit closer to the asymptotic regime.
    Window best;
    bool found = false;
    std::size_t i = 0;
    while (i < records.size()) {
        if (!usable[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < records.size() && usable[j + 1] &&
               records[j + 1].successive_diff < records[j].successive_diff) {
            ++j;
        }
        const Window run{i, j};
        if (!found || run.length() >= best.length()) {
            best = run;
            found = true;
        }
        i = j + 1;
    }
    if (!found || best.length() < 3) {
        throw DiagnosticsError(
            "no monotone decreasing window of 3+ iterations above the noise floor " +
            floor_text);
    }

    // Least squares on (log e_k, log e_{k+1}) pairs inside the window.
    std::vector<Real> xs, ys;
    for (std::size_t k = best.begin; k < best.end; ++k) {
        xs.push_back(log(records[k].successive_diff));
        ys.push_back(log(records[k + 1].successive_diff));
    }
    const long m = static_cast<long>(xs.size());
    Real x_mean = Real::zero(ctx);
    Real y_mean = Real::zero(ctx);
    for (long k = 0; k < m; ++k) {
        x_mean += xs[static_cast<std::size_t>(k)];
        y_mean += ys[static_cast<std::size_t>(k)];
    }
    x_mean = x_mean / m;
    y_mean = y_mean / m;
    Real sxx = Real::zero(ctx);
    Real sxy = Real::zero(ctx);
    for (long k = 0; k < m; ++k) {
        const Real dx = xs[static_cast<std::size_t>(k)] - x_mean;
        const Real dy = ys[static_cast<std::size_t>(k)] - y_mean;
        sxx += dx * dx;
        sxy += dx * dy;
    }
    const Real order = sxy / sxx;
    const Real constant = exp(y_mean - order * x_mean);
    return ConvergenceEstimate{order, constant, best.begin, best.end};
}

LadderResult precision_ladder(const ProblemSpec& problem, const Grid& grid,
                              const SolverConfig& cfg, const std::vector<int>& digit_levels) {
    if (digit_levels.size() < 2) {
        throw ConfigError("a precision ladder needs at least 2 digit levels, got " +
                          std::to_string(digit_levels.size()));
    }
    for (std::size_t i = 0; i < digit_levels.size(); ++i) {
        if (digit_levels[i] < PrecisionContext::kMinDigits) {
            throw ConfigError("digit level " + std::to_string(digit_levels[i]) +
                              " is below the minimum of " +
                              std::to_string(PrecisionContext::kMinDigits));
        }
        if (i > 0 && digit_levels[i] <= digit_levels[i - 1]) {
            throw ConfigError("digit levels must be strictly increasing");
        }
    }

    LadderResult out;
    for (const int digits : digit_levels) {
        const PrecisionContext ctx(digits);
        SolverConfig level_cfg = cfg;
        level_cfg.precision = ctx;
        level_cfg.rule.target_digits = digits - 5;
        const Real tol_floor = Real::pow10(-(digits - 5) + 2, ctx);
        const Real base_tol = cfg.tolerance.to_context(ctx);
        level_cfg.tolerance = base_tol > tol_floor ? base_tol : tol_floor;

        LadderLevel level;
        level.digits = digits;
        try {
            const SolveResult result =
                solve(problem, default_initial_guess(problem, grid, ctx), level_cfg);
            level.converged = result.converged;
            level.diverged = result.diverged;
            level.iterations = result.iterations_used;
            level.solution = result.solution;
        } catch (const Error& e) {
            level.error = e.what();
        }
        out.levels.push_back(std::move(level));
    }

    for (std::size_t i = 0; i + 1 < out.levels.size(); ++i) {
        const auto& a = out.levels[i].solution;
        const auto& b = out.levels[i + 1].solution;
        const int wide = digit_levels[i + 1];
        if (!a || !b) {
            out.deviations.push_back(Real::nan(PrecisionContext(wide)));
            continue;
        }
        Real dev = abs((*a)[0] - (*b)[0]);
        for (std::size_t j = 1; j < a->size(); ++j) {
            Real d = abs((*a)[j] - (*b)[j]);
            if (d > dev) dev = std::move(d);
        }
        out.deviations.push_back(std::move(dev));
    }
    return out;
}

}  // namespace volterra
