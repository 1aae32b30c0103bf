#include <doctest.h>

#include <random>

#include "volterra/errors.hpp"
#include "volterra/kernels.hpp"

using volterra::bratu_problem;
using volterra::linear_problem;
using volterra::make_problem;
using volterra::PrecisionContext;
using volterra::ProblemSpec;
using volterra::Real;

namespace {

const PrecisionContext ctx(50);

Real dec(const char* text) { return Real::from_decimal(text, ctx); }

// Central-difference consistency between eval and eval_du at random probe
// points; h is chosen so the truncation term h^2 dominates roundoff.
void check_derivative_consistency(const ProblemSpec& problem, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> point(0.0, 2.0);
    std::uniform_real_distribution<double> state(-2.0, 2.0);
    const Real h = Real::pow10(-16, ctx);
    const Real bound = Real::pow10(-30, ctx);
    for (int probe = 0; probe < 100; ++probe) {
        const Real t = Real::from_double(point(rng), ctx);
        const Real s = t * Real::from_double(point(rng) / 2.0, ctx);
        const Real u = Real::from_double(state(rng), ctx);
        const Real fd = (problem.kernel.eval(t, s, u + h) - problem.kernel.eval(t, s, u - h)) /
                        (2L * h);
        const Real du = problem.kernel.eval_du(t, s, u);
        CHECK(abs(fd - du) <= bound * (Real(1L, ctx) + abs(du)));
    }
}

}  // namespace

TEST_CASE("bratu kernel evaluates its closed form") {
    ProblemSpec p = bratu_problem(dec("1"), dec("0"), dec("0"), dec("2"));
    CHECK(p.kernel.name == "bratu");
    CHECK(p.kernel.eval(dec("1"), dec("0"), dec("0")) == dec("-1"));
    CHECK(p.kernel.eval_du(dec("1"), dec("0"), dec("0")) == dec("-1"));
    CHECK(p.inhomogeneous(dec("0.7")) == Real::zero(ctx));

    ProblemSpec affine = bratu_problem(dec("0"), dec("2"), dec("3"), dec("2"));
    CHECK(affine.kernel.eval(dec("1"), dec("0.5"), dec("1")) == Real::zero(ctx));
    CHECK(affine.inhomogeneous(dec("2")) == dec("8"));
}

TEST_CASE("bratu kernel sign tracks lambda") {
    ProblemSpec pos = bratu_problem(dec("1.5"), dec("0"), dec("0"), dec("2"));
    ProblemSpec neg = bratu_problem(dec("-1.5"), dec("0"), dec("0"), dec("2"));
    std::mt19937_64 rng(31u);
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Real t = Real::from_double(1.0 + pick(rng), ctx);
        const Real s = t * Real::from_double(pick(rng) * 0.99, ctx);
        const Real u = Real::from_double(pick(rng) * 4.0 - 2.0, ctx);
        CHECK(pos.kernel.eval(t, s, u) < Real::zero(ctx));
        CHECK(neg.kernel.eval(t, s, u) > Real::zero(ctx));
    }
}

TEST_CASE("linear kernel evaluates its closed form") {
    ProblemSpec p = linear_problem(dec("3"), dec("7"), dec("2"));
    CHECK(p.kernel.name == "linear");
    CHECK(p.kernel.eval(dec("1"), dec("0.5"), dec("2")) == dec("6"));
    CHECK(p.kernel.eval_du(dec("1"), dec("0.5"), dec("2")) == dec("3"));
    CHECK(p.inhomogeneous(dec("1.3")) == dec("7"));
}

TEST_CASE("kernel derivatives match central differences") {
    check_derivative_consistency(bratu_problem(dec("1"), dec("0"), dec("0"), dec("2")), 17u);
    check_derivative_consistency(bratu_problem(dec("-3"), dec("0.5"), dec("-1"), dec("2")),
                                 18u);
    check_derivative_consistency(linear_problem(dec("2"), dec("1"), dec("2")), 19u);
}

TEST_CASE("horizon must be positive") {
    CHECK_THROWS_AS(bratu_problem(dec("1"), dec("0"), dec("0"), dec("0")),
                    volterra::ConfigError);
    CHECK_THROWS_AS(linear_problem(dec("1"), dec("1"), dec("-2")), volterra::ConfigError);
}

TEST_CASE("registry builds problems by name") {
    CHECK(volterra::registered_kernels() == std::vector<std::string>{"bratu", "linear"});

    ProblemSpec bratu = make_problem(
        "bratu", {{"lambda", dec("2")}, {"u0", dec("0")}, {"uprime0", dec("0")}}, dec("1"));
    CHECK(bratu.kernel.eval(dec("1"), dec("0"), dec("0")) == dec("-2"));

    ProblemSpec linear = make_problem("linear", {{"a", dec("1")}, {"b", dec("4")}}, dec("1"));
    CHECK(linear.inhomogeneous(dec("0")) == dec("4"));

    CHECK_THROWS_AS(make_problem("heat", {}, dec("1")), volterra::ConfigError);
    CHECK_THROWS_AS(make_problem("bratu", {{"lambda", dec("1")}}, dec("1")),
                    volterra::ConfigError);
    CHECK_THROWS_AS(make_problem("linear", {{"a", dec("1")}}, dec("1")),
                    volterra::ConfigError);
}

TEST_CASE("kernel parameters are recorded") {
    ProblemSpec p = bratu_problem(dec("2.5"), dec("1"), dec("-1"), dec("3"));
    CHECK(p.kernel.params.at("lambda") == dec("2.5"));
    CHECK(p.kernel.params.at("u0") == dec("1"));
    CHECK(p.kernel.params.at("uprime0") == dec("-1"));
    CHECK(p.t_end == dec("3"));
}
