#include <doctest.h>

#include <memory>
#include <random>
#include <vector>

#include "volterra/diagnostics.hpp"
#include "volterra/errors.hpp"

using volterra::bratu_problem;
using volterra::ConvergenceEstimate;
using volterra::default_initial_guess;
using volterra::estimate_rate;
using volterra::Grid;
using volterra::IterationTrace;
using volterra::LadderResult;
using volterra::linear_problem;
using volterra::newton_solve;
using volterra::precision_ladder;
using volterra::PrecisionContext;
using volterra::ProblemSpec;
using volterra::Real;
using volterra::Scheme;
using volterra::SolverConfig;

namespace {

const PrecisionContext ctx(50);

Real dec(const char* text) { return Real::from_decimal(text, ctx); }

IterationTrace trace_from(const std::vector<Real>& diffs, int target_digits = 45) {
    IterationTrace trace;
    trace.target_digits = target_digits;
    for (std::size_t k = 0; k < diffs.size(); ++k) {
        trace.records.push_back({k, diffs[k], Real::nan(ctx), 0.0});
    }
    return trace;
}

// e_{k+1} = C * e_k^p from a starting value, in exact Real arithmetic.
std::vector<Real> synthetic_sequence(const Real& e0, const Real& C, const Real& p,
                                     std::size_t count) {
    std::vector<Real> seq{e0};
    for (std::size_t k = 1; k < count; ++k) {
        seq.push_back(C * exp(p * log(seq.back())));
    }
    return seq;
}

}  // namespace

TEST_CASE("exact quadratic sequence fits order two") {
    // e_{k+1} = e_k^2 starting from 1/2.
    std::vector<Real> diffs{dec("0.5")};
    for (int k = 0; k < 7; ++k) diffs.push_back(diffs.back() * diffs.back());
    ConvergenceEstimate est = estimate_rate(trace_from(diffs));
    CHECK(abs(est.fitted_order - dec("2")) <= Real::pow10(-6, ctx));
    CHECK(abs(est.fitted_constant - dec("1")) <= dec("0.01"));
    CHECK(est.window_begin == 0);
    CHECK(est.window_end == 7);
}

TEST_CASE("exact linear sequence fits order one with its contraction factor") {
    std::vector<Real> diffs;
    Real e = dec("1");
    for (int k = 0; k < 20; ++k) {
        e = e / 2L;
        diffs.push_back(e);
    }
    ConvergenceEstimate est = estimate_rate(trace_from(diffs));
    CHECK(abs(est.fitted_order - dec("1")) <= Real::pow10(-6, ctx));
    CHECK(abs(est.fitted_constant - dec("0.5")) <= dec("0.005"));
}

TEST_CASE("synthetic sequences round-trip their parameters") {
    std::mt19937_64 rng(2718u);
    std::uniform_real_distribution<double> order_pick(1.2, 2.5);
    // C * e0^(p-1) stays below 1 so every sequence contracts from the start.
    std::uniform_real_distribution<double> const_pick(0.3, 0.95);
    for (int trial = 0; trial < 10; ++trial) {
        const Real p = Real::from_double(order_pick(rng), ctx);
        const Real C = Real::from_double(const_pick(rng), ctx);
        std::vector<Real> diffs = synthetic_sequence(dec("0.25"), C, p, 8);
        // Keep only entries above the fitting floor.
        std::vector<Real> usable;
        for (const Real& d : diffs) {
            if (d > Real::pow10(-42, ctx)) usable.push_back(d);
        }
        if (usable.size() < 4) continue;
        ConvergenceEstimate est = estimate_rate(trace_from(usable));
        CHECK(abs(est.fitted_order - p) <= Real::pow10(-6, ctx));
        CHECK(abs(est.fitted_constant - C) <= dec("0.01") * C);
    }

    // A constant above one is recoverable once the start is small enough.
    std::vector<Real> diffs = synthetic_sequence(dec("0.01"), dec("3"), dec("2"), 5);
    ConvergenceEstimate est = estimate_rate(trace_from(diffs));
    CHECK(abs(est.fitted_order - dec("2")) <= Real::pow10(-6, ctx));
    CHECK(abs(est.fitted_constant - dec("3")) <= dec("0.03"));
}

TEST_CASE("noise below the floor is excluded from the window") {
    std::vector<Real> diffs{dec("0.5"),  dec("0.1"),   dec("0.02"),
                            dec("4e-3"), dec("8e-4"),  dec("1.6e-4"),
                            dec("1e-44"), dec("3e-44"), dec("2e-44")};
    ConvergenceEstimate est = estimate_rate(trace_from(diffs));
    CHECK(est.window_begin == 0);
    CHECK(est.window_end == 5);
    CHECK(abs(est.fitted_order - dec("1")) <= dec("0.01"));
}

TEST_CASE("rate fitting rejects traces without a usable window") {
    CHECK_THROWS_AS(estimate_rate(trace_from({dec("0.5"), dec("0.25"), dec("0.125")})),
                    volterra::DiagnosticsError);

    CHECK_THROWS_AS(estimate_rate(trace_from(
                        {dec("1e-44"), dec("1e-45"), dec("1e-46"), dec("1e-47"), dec("1e-48")})),
                    volterra::DiagnosticsError);

    // Plenty of iterations but no monotone stretch of length 3.
    CHECK_THROWS_AS(
        estimate_rate(trace_from({dec("0.5"), dec("0.9"), dec("0.4"), dec("0.8"), dec("0.3")})),
        volterra::DiagnosticsError);

    CHECK_THROWS_AS(estimate_rate(trace_from({})), volterra::DiagnosticsError);
}

TEST_CASE("ties between windows go to the later run") {
    std::vector<Real> diffs{dec("0.9"), dec("0.5"), dec("0.3"),
                            dec("0.7"), dec("0.2"), dec("0.1")};
    ConvergenceEstimate est = estimate_rate(trace_from(diffs));
    CHECK(est.window_begin == 3);
    CHECK(est.window_end == 5);
}

TEST_CASE("newton trace on bratu fits a quadratic order") {
    ProblemSpec p = bratu_problem(dec("1"), dec("0"), dec("0"), dec("1"));
    auto grid = std::make_shared<const Grid>(Grid::uniform(dec("1"), dec("0.1")));
    SolverConfig cfg = SolverConfig::defaults(ctx);
    auto result = newton_solve(p, default_initial_guess(p, *grid, ctx), cfg);
    CHECK(result.converged);
    ConvergenceEstimate est = estimate_rate(result.trace);
    CHECK(est.fitted_order >= dec("1.6"));
    CHECK(est.fitted_order <= dec("2.4"));
}

TEST_CASE("precision ladder deviations shrink as digits grow") {
    ProblemSpec p = linear_problem(dec("1"), dec("1"), dec("1"));
    const Grid grid = Grid::uniform(dec("1"), dec("0.25"));
    SolverConfig cfg = SolverConfig::defaults(ctx);
    LadderResult ladder = precision_ladder(p, grid, cfg, {15, 30, 50});

    REQUIRE(ladder.levels.size() == 3);
    REQUIRE(ladder.deviations.size() == 2);
    for (const auto& level : ladder.levels) {
        CHECK(level.converged);
        CHECK(level.error.empty());
    }
    CHECK(ladder.deviations[0].is_finite());
    CHECK(ladder.deviations[1] <= ladder.deviations[0]);
    // 15-digit arithmetic leaves roughly 8 digits of agreement; 30 vs 50
    // resolves the same fixed point far beyond that.
    CHECK(ladder.deviations[0] <= Real::pow10(-7, ctx));
    CHECK(ladder.deviations[1] <= Real::pow10(-20, ctx));
}

TEST_CASE("ladder levels are validated") {
    ProblemSpec p = linear_problem(dec("1"), dec("1"), dec("1"));
    const Grid grid = Grid::uniform(dec("1"), dec("0.5"));
    SolverConfig cfg = SolverConfig::defaults(ctx);
    CHECK_THROWS_AS(precision_ladder(p, grid, cfg, {50}), volterra::ConfigError);
    CHECK_THROWS_AS(precision_ladder(p, grid, cfg, {10, 50}), volterra::ConfigError);
    CHECK_THROWS_AS(precision_ladder(p, grid, cfg, {50, 30}), volterra::ConfigError);
    CHECK_THROWS_AS(precision_ladder(p, grid, cfg, {30, 30}), volterra::ConfigError);
}

TEST_CASE("ladder records per-level failures without dying") {
    ProblemSpec p = bratu_problem(dec("1"), dec("0"), dec("0"), dec("1"));
    const Grid grid = Grid::uniform(dec("1"), dec("0.5"));
    SolverConfig cfg = SolverConfig::defaults(ctx);
    cfg.rule.max_refinement_level = 2;  // starves quadrature at every level
    LadderResult ladder = precision_ladder(p, grid, cfg, {20, 40});
    REQUIRE(ladder.levels.size() == 2);
    for (const auto& level : ladder.levels) {
        CHECK_FALSE(level.converged);
        CHECK_FALSE(level.error.empty());
        CHECK_FALSE(level.solution.has_value());
    }
    REQUIRE(ladder.deviations.size() == 1);
    CHECK(ladder.deviations[0].is_nan());
}
