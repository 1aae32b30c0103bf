#include <cstddef>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "volterra/csv_io.hpp"
#include "volterra/diagnostics.hpp"
#include "volterra/errors.hpp"
#include "volterra/grid.hpp"
#include "volterra/kernels.hpp"
#include "volterra/solver.hpp"

namespace {

using volterra::ConfigError;
using volterra::Grid;
using volterra::IterationTrace;
using volterra::PrecisionContext;
using volterra::ProblemSpec;
using volterra::Real;
using volterra::SolverConfig;

struct Flags {
    std::string kernel;
    std::string lambda = "1";
    std::string u0 = "0";
    std::string uprime0 = "0";
    std::string a = "1";
    std::string b = "1";
    std::string t_end;
    std::string step;
    int precision = 50;
    std::string tol;
    int max_iter = 50;
    std::string scheme = "newton";
    std::string out;
    std::string trace;
    std::string lambdas = "0.5,1.0,2.0,3.0";
    std::string trace_pattern = "trace_lambda_{value}.csv";
    std::string digit_levels;
    std::string config;
};

std::string trimmed(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

int parse_int_flag(const std::string& name, const std::string& text) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(text, &used);
    } catch (const std::exception&) {
        used = std::string::npos;
    }
    if (used != text.size()) {
        throw ConfigError(name + ": \"" + text + "\" is not an integer");
    }
    return value;
}

/// "key = value" lines, one per flag, '#' starts a comment. Values given on
/// the command line win over the file.
void apply_config_file(CLI::App* cmd, Flags& f) {
    std::ifstream in(f.config);
    if (!in) throw ConfigError("cannot read config file \"" + f.config + "\"");

    std::map<std::string, std::string> pairs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trimmed(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected \"key = value\"");
        }
        const std::string key = trimmed(line.substr(0, eq));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        }
        pairs[key] = trimmed(line.substr(eq + 1));
    }

    const std::map<std::string, std::string*> text_keys{
        {"kernel", &f.kernel},   {"lambda", &f.lambda},
        {"u0", &f.u0},           {"uprime0", &f.uprime0},
        {"a", &f.a},             {"b", &f.b},
        {"t-end", &f.t_end},     {"step", &f.step},
        {"tol", &f.tol},         {"scheme", &f.scheme},
        {"out", &f.out},         {"trace", &f.trace},
        {"lambdas", &f.lambdas}, {"trace-pattern", &f.trace_pattern},
        {"digit-levels", &f.digit_levels},
    };
    const std::map<std::string, int*> int_keys{
        {"precision", &f.precision},
        {"max-iter", &f.max_iter},
    };

    for (const auto& [key, value] : pairs) {
        if (key == "config" || cmd->get_option_no_throw("--" + key) == nullptr) {
            throw ConfigError("config: \"" + key + "\" does not name a flag of this command");
        }
        if (cmd->count("--" + key) > 0) continue;
        const auto int_slot = int_keys.find(key);
        if (int_slot != int_keys.end()) {
            *int_slot->second = parse_int_flag("config key " + key, value);
        } else {
            *text_keys.at(key) = value;
        }
    }
}

void require_flag(const char* flag, const std::string& value) {
    if (value.empty()) throw ConfigError(std::string(flag) + " is required");
}

void add_common_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--kernel", f.kernel, "Kernel name (bratu or linear)")
        ->check(CLI::IsMember({"bratu", "linear"}));
    cmd->add_option("--lambda", f.lambda, "Bratu parameter (decimal string)");
    cmd->add_option("--u0", f.u0, "Bratu initial value u(0)");
    cmd->add_option("--uprime0", f.uprime0, "Bratu initial slope u'(0)");
    cmd->add_option("--a", f.a, "Linear kernel coefficient in K = a*u");
    cmd->add_option("--b", f.b, "Linear kernel constant source g = b");
    cmd->add_option("--t-end", f.t_end, "Problem horizon T > 0");
    cmd->add_option("--step", f.step, "Uniform grid step; T/step must be an integer");
    cmd->add_option("--precision", f.precision, "Working decimal digits, at least 15")
        ->capture_default_str();
    cmd->add_option("--tol", f.tol,
                    "Stopping tolerance on successive differences "
                    "(default 1e-(precision-7))");
    cmd->add_option("--max-iter", f.max_iter, "Iteration cap")->capture_default_str();
    cmd->add_option("--scheme", f.scheme, "Iteration scheme")
        ->capture_default_str()
        ->check(CLI::IsMember({"picard", "newton"}));
    cmd->add_option("--out", f.out, "Output CSV path (stdout when omitted)");
    cmd->add_option("--trace", f.trace, "Iteration trace CSV path");
    cmd->add_option("--config", f.config,
                    "File of key = value lines mirroring the flags; '#' comments; "
                    "command-line flags win");
}

Real parse_decimal_flag(const char* flag, const std::string& text,
                        const PrecisionContext& ctx) {
    try {
        return Real::from_decimal(text, ctx);
    } catch (const volterra::ParseError& e) {
        throw ConfigError(std::string(flag) + ": " + e.what());
    }
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> tokens;
    std::string::size_type start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        std::string token = text.substr(start, comma - start);
        const auto first = token.find_first_not_of(" \t");
        if (first != std::string::npos) {
            const auto last = token.find_last_not_of(" \t");
            tokens.push_back(token.substr(first, last - first + 1));
        }
        start = comma + 1;
    }
    return tokens;
}

void write_with(const std::string& path, const std::function<void(std::ostream&)>& body) {
    if (path.empty()) {
        body(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open \"" + path + "\" for writing");
    body(out);
}

ProblemSpec build_problem(const Flags& f, const PrecisionContext& ctx) {
    std::map<std::string, Real> params;
    if (f.kernel == "bratu") {
        params.emplace("lambda", parse_decimal_flag("--lambda", f.lambda, ctx));
        params.emplace("u0", parse_decimal_flag("--u0", f.u0, ctx));
        params.emplace("uprime0", parse_decimal_flag("--uprime0", f.uprime0, ctx));
    } else if (f.kernel == "linear") {
        params.emplace("a", parse_decimal_flag("--a", f.a, ctx));
        params.emplace("b", parse_decimal_flag("--b", f.b, ctx));
    }
    return make_problem(f.kernel, params, parse_decimal_flag("--t-end", f.t_end, ctx));
}

SolverConfig build_config(const Flags& f, const PrecisionContext& ctx) {
    if (f.scheme != "picard" && f.scheme != "newton") {
        throw ConfigError("--scheme must be picard or newton, got \"" + f.scheme + "\"");
    }
    SolverConfig cfg = SolverConfig::defaults(ctx);
    if (!f.tol.empty()) cfg.tolerance = parse_decimal_flag("--tol", f.tol, ctx);
    cfg.max_iter = f.max_iter;
    cfg.scheme = f.scheme == "picard" ? volterra::Scheme::Picard : volterra::Scheme::Newton;
    return cfg;
}

int run_solve(CLI::App* cmd, Flags& f) {
    if (!f.config.empty()) apply_config_file(cmd, f);
    require_flag("--kernel", f.kernel);
    require_flag("--t-end", f.t_end);
    require_flag("--step", f.step);
    const PrecisionContext ctx(f.precision);
    const Grid grid = Grid::uniform(parse_decimal_flag("--t-end", f.t_end, ctx),
                                    parse_decimal_flag("--step", f.step, ctx));
    const ProblemSpec problem = build_problem(f, ctx);
    const SolverConfig cfg = build_config(f, ctx);

    try {
        const volterra::SolveResult result =
            solve(problem, default_initial_guess(problem, grid, ctx), cfg);
        write_with(f.out, [&](std::ostream& os) { write_solution_csv(os, result.solution); });
        if (!f.trace.empty()) {
            write_with(f.trace, [&](std::ostream& os) { write_trace_csv(os, result.trace); });
        }
        if (result.converged) return 0;
        std::cerr << (result.diverged ? "iteration diverged"
                                      : "not converged within --max-iter iterations")
                  << "\n";
        return 2;
    } catch (const volterra::SolverAbortError& e) {
        std::cerr << "solver aborted: " << e.what() << "\n";
        if (!f.trace.empty()) {
            write_with(f.trace, [&](std::ostream& os) { write_trace_csv(os, e.trace()); });
        }
        return 2;
    } catch (const volterra::SingularMatrixError& e) {
        std::cerr << "solver aborted: " << e.what() << "\n";
        return 2;
    }
}

int run_sweep(CLI::App* cmd, Flags& f) {
    if (!f.config.empty()) apply_config_file(cmd, f);
    require_flag("--t-end", f.t_end);
    require_flag("--step", f.step);
    const PrecisionContext ctx(f.precision);
    if (!f.kernel.empty() && f.kernel != "bratu") {
        throw ConfigError("sweep runs the bratu family; --kernel " + f.kernel +
                          " is not supported here");
    }
    if (!f.trace.empty()) {
        throw ConfigError("sweep writes one trace per lambda; use --trace-pattern");
    }
    const std::vector<std::string> tokens = split_list(f.lambdas);
    if (tokens.empty()) throw ConfigError("--lambdas needs at least one value");
    if (tokens.size() > 1 && f.trace_pattern.find("{value}") == std::string::npos) {
        throw ConfigError("--trace-pattern needs a {value} placeholder when sweeping "
                          "more than one lambda");
    }

    const Grid grid = Grid::uniform(parse_decimal_flag("--t-end", f.t_end, ctx),
                                    parse_decimal_flag("--step", f.step, ctx));
    const Real t_end = parse_decimal_flag("--t-end", f.t_end, ctx);
    const Real u0 = parse_decimal_flag("--u0", f.u0, ctx);
    const Real uprime0 = parse_decimal_flag("--uprime0", f.uprime0, ctx);
    std::vector<Real> values;
    for (const std::string& token : tokens) {
        values.push_back(parse_decimal_flag("--lambdas", token, ctx));
    }
    const SolverConfig cfg = build_config(f, ctx);

    std::vector<volterra::SweepRow> rows;
    bool any_converged = false;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const ProblemSpec problem = bratu_problem(values[i], u0, uprime0, t_end);
        bool converged = false;
        bool diverged = false;
        std::size_t iterations = 0;
        IterationTrace trace;
        try {
            const volterra::SolveResult result =
                solve(problem, default_initial_guess(problem, grid, ctx), cfg);
            converged = result.converged;
            diverged = result.diverged;
            iterations = result.iterations_used;
            trace = result.trace;
            if (diverged) std::cerr << "lambda " << tokens[i] << ": iteration diverged\n";
        } catch (const volterra::SolverAbortError& e) {
            std::cerr << "lambda " << tokens[i] << ": " << e.what() << "\n";
            trace = e.trace();
            iterations = trace.records.size();
        } catch (const volterra::SingularMatrixError& e) {
            std::cerr << "lambda " << tokens[i] << ": " << e.what() << "\n";
        }

        Real final_diff = Real::nan(ctx);
        if (!trace.records.empty()) final_diff = trace.records.back().successive_diff;
        std::string fitted;
        try {
            fitted = estimate_rate(trace).fitted_order.to_decimal();
        } catch (const volterra::DiagnosticsError&) {
        }

        std::string path = f.trace_pattern;
        const auto slot = path.find("{value}");
        if (slot != std::string::npos) path.replace(slot, 7, tokens[i]);
        write_with(path, [&](std::ostream& os) { write_trace_csv(os, trace); });

        rows.push_back({values[i], converged, diverged, iterations, final_diff, fitted});
        any_converged = any_converged || converged;
    }

    write_with(f.out, [&](std::ostream& os) { write_sweep_summary_csv(os, rows); });
    return any_converged ? 0 : 2;
}

int run_compare_precision(CLI::App* cmd, Flags& f) {
    if (!f.config.empty()) apply_config_file(cmd, f);
    require_flag("--kernel", f.kernel);
    require_flag("--t-end", f.t_end);
    require_flag("--step", f.step);
    require_flag("--digit-levels", f.digit_levels);
    if (!f.trace.empty()) {
        throw ConfigError("compare-precision has no iteration trace output");
    }
    std::vector<int> levels;
    for (const std::string& token : split_list(f.digit_levels)) {
        levels.push_back(parse_int_flag("--digit-levels", token));
    }
    if (levels.empty()) throw ConfigError("--digit-levels needs at least one value");

    int wide = f.precision;
    for (const int d : levels) wide = std::max(wide, d);
    const PrecisionContext ctx(wide);
    const Grid grid = Grid::uniform(parse_decimal_flag("--t-end", f.t_end, ctx),
                                    parse_decimal_flag("--step", f.step, ctx));
    const ProblemSpec problem = build_problem(f, ctx);
    const SolverConfig cfg = build_config(f, PrecisionContext(f.precision));

    const volterra::LadderResult ladder = precision_ladder(problem, grid, cfg, levels);
    bool all_converged = true;
    for (const volterra::LadderLevel& level : ladder.levels) {
        if (!level.error.empty()) {
            std::cerr << "digits " << level.digits << ": " << level.error << "\n";
        }
        all_converged = all_converged && level.converged;
    }
    write_with(f.out, [&](std::ostream& os) { write_ladder_csv(os, ladder); });
    return all_converged ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arbitrary-precision solver for nonlinear Volterra integral equations "
                 "of the second kind"};
    app.require_subcommand(1);

    Flags solve_flags, sweep_flags, compare_flags;

    CLI::App* solve_cmd =
        app.add_subcommand("solve", "Solve one problem; emit solution and trace CSVs");
    add_common_flags(solve_cmd, solve_flags);

    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "Solve the bratu problem for each lambda; emit traces and a summary");
    add_common_flags(sweep_cmd, sweep_flags);
    sweep_cmd
        ->add_option("--lambdas", sweep_flags.lambdas, "Comma-separated lambda values")
        ->capture_default_str();
    sweep_cmd
        ->add_option("--trace-pattern", sweep_flags.trace_pattern,
                     "Per-lambda trace path; {value} is replaced by the lambda")
        ->capture_default_str();

    CLI::App* compare_cmd = app.add_subcommand(
        "compare-precision", "Re-solve at increasing digit counts; emit deviations");
    add_common_flags(compare_cmd, compare_flags);
    compare_cmd->add_option("--digit-levels", compare_flags.digit_levels,
                            "Comma-separated decimal digit counts, strictly increasing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve_cmd->parsed()) return run_solve(solve_cmd, solve_flags);
        if (sweep_cmd->parsed()) return run_sweep(sweep_cmd, sweep_flags);
        return run_compare_precision(compare_cmd, compare_flags);
    } catch (const volterra::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const volterra::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const volterra::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const volterra::ShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const volterra::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
