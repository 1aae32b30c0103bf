#include <doctest.h>

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "volterra/csv_io.hpp"

using volterra::Grid;
using volterra::IterationTrace;
using volterra::LadderLevel;
using volterra::LadderResult;
using volterra::PrecisionContext;
using volterra::Real;
using volterra::SolutionVector;
using volterra::SweepRow;

namespace {

const PrecisionContext ctx(50);

Real dec(const char* text) { return Real::from_decimal(text, ctx); }

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace

TEST_CASE("solution csv rows re-parse to identical values") {
    auto grid = std::make_shared<const Grid>(Grid::uniform(dec("1"), dec("0.25")));
    std::vector<Real> values{dec("1"), dec("1") / 3L, dec("-2.5"), dec("1e-45"),
                             Real::zero(ctx)};
    SolutionVector u(grid, values);

    std::ostringstream out;
    write_solution_csv(out, u);
    auto lines = lines_of(out.str());

    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "t,u");
    for (std::size_t i = 0; i < 5; ++i) {
        auto fields = fields_of(lines[i + 1]);
        REQUIRE(fields.size() == 2);
        CHECK(Real::from_decimal(fields[0], ctx) == grid->node(i));
        CHECK(Real::from_decimal(fields[1], ctx) == u[i]);
    }
}

TEST_CASE("trace csv carries all four columns") {
    IterationTrace trace;
    trace.records.push_back({0, dec("0.5"), dec("0.25"), 0.123456789});
    trace.records.push_back({1, dec("1e-30"), Real::nan(ctx), 2.0});

    std::ostringstream out;
    write_trace_csv(out, trace);
    auto lines = lines_of(out.str());

    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "iter,successive_diff,residual_norm,wall_time_s");

    auto row0 = fields_of(lines[1]);
    REQUIRE(row0.size() == 4);
    CHECK(row0[0] == "0");
    CHECK(Real::from_decimal(row0[1], ctx) == dec("0.5"));
    CHECK(Real::from_decimal(row0[2], ctx) == dec("0.25"));
    CHECK(row0[3] == "0.123456789");

    auto row1 = fields_of(lines[2]);
    REQUIRE(row1.size() == 4);
    CHECK(row1[0] == "1");
    CHECK(Real::from_decimal(row1[1], ctx) == dec("1e-30"));
    CHECK(row1[2] == "nan");
    CHECK(row1[3] == "2");
}

TEST_CASE("sweep summary csv formats booleans and blank fits") {
    std::vector<SweepRow> rows;
    rows.push_back({dec("0.5"), true, false, 6, dec("1e-46"), "2.0013"});
    rows.push_back({dec("-3"), false, true, 40, Real::nan(ctx), ""});

    std::ostringstream out;
    write_sweep_summary_csv(out, rows);
    auto lines = lines_of(out.str());

    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "lambda,converged,iterations,final_diff,fitted_order");
    CHECK(lines[1] == "0.5,true,6,1e-46,2.0013");
    CHECK(lines[2] == "-3,false,40,nan,");
    CHECK(fields_of(lines[2]).size() == 5);
}

TEST_CASE("ladder csv leaves the last deviation empty") {
    LadderResult ladder;
    LadderLevel a;
    a.digits = 15;
    a.converged = true;
    a.iterations = 4;
    LadderLevel b;
    b.digits = 50;
    b.converged = true;
    b.iterations = 5;
    LadderLevel c;
    c.digits = 80;
    c.converged = false;
    c.iterations = 50;
    ladder.levels = {a, b, c};
    ladder.deviations = {dec("1e-9"), dec("2.5e-44")};

    std::ostringstream out;
    write_ladder_csv(out, ladder);
    auto lines = lines_of(out.str());

    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "digits,converged,iterations,deviation_from_next");
    CHECK(lines[1] == "15,true,4,1e-9");
    CHECK(lines[2] == "50,true,5,2.5e-44");
    CHECK(lines[3] == "80,false,50,");
    CHECK(fields_of(lines[3]).size() == 4);
}
