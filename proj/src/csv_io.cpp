#include "volterra/csv_io.hpp"

#include <cstdio>

namespace volterra {

namespace {

std::string format_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", s);
    return buf;
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

void write_solution_csv(std::ostream& out, const SolutionVector& solution) {
    out << "t,u\n";
    for (std::size_t i = 0; i < solution.size(); ++i) {
        out << solution.grid().node(i).to_decimal() << ',' << solution[i].to_decimal() << '\n';
    }
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace) {
    out << "iter,successive_diff,residual_norm,wall_time_s\n";
    for (const IterationRecord& rec : trace.records) {
        out << rec.iteration << ',' << rec.successive_diff.to_decimal() << ','
            << rec.residual_norm.to_decimal() << ',' << format_seconds(rec.wall_time_s)
            << '\n';
    }
}

void write_sweep_summary_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "lambda,converged,iterations,final_diff,fitted_order\n";
    for (const SweepRow& row : rows) {
        out << row.lambda.to_decimal() << ',' << bool_text(row.converged) << ','
            << row.iterations << ',' << row.final_diff.to_decimal() << ',' << row.fitted_order
            << '\n';
    }
}

void write_ladder_csv(std::ostream& out, const LadderResult& ladder) {
    out << "digits,converged,iterations,deviation_from_next\n";
    for (std::size_t i = 0; i < ladder.levels.size(); ++i) {
        const LadderLevel& level = ladder.levels[i];
        out << level.digits << ',' << bool_text(level.converged) << ',' << level.iterations
            << ',';
        if (i < ladder.deviations.size()) {
            out << ladder.deviations[i].to_decimal();
        }
        out << '\n';
    }
}

}  // namespace volterra
