#include "volterra/kernels.hpp"

#include "volterra/errors.hpp"

namespace volterra {

namespace {

void check_horizon(const Real& t_end) {
    if (!(t_end > Real::zero(t_end.context()))) {
        throw ConfigError("problem horizon t_end must be positive, got " + t_end.to_decimal());
    }
}

const Real& require_param(const std::map<std::string, Real>& params, const std::string& key,
                          const std::string& kernel) {
    auto it = params.find(key);
    if (it == params.end()) {
        throw ConfigError("kernel \"" + kernel + "\" needs parameter \"" + key + "\"");
    }
    return it->second;
}

}  // namespace

ProblemSpec bratu_problem(const Real& lambda, const Real& u0, const Real& uprime0,
                          const Real& t_end) {
    check_horizon(t_end);
    KernelSpec kernel;
    kernel.name = "bratu";
    kernel.params = {{"lambda", lambda}, {"u0", u0}, {"uprime0", uprime0}};
    // K and its u-derivative coincide because d/du e^u = e^u.
    const KernelFn body = [lambda](const Real& t, const Real& s, const Real& u) {
        return -(lambda * (t - s) * exp(u));
    };
    kernel.eval = body;
    kernel.eval_du = body;
    SourceFn g = [u0, uprime0](const Real& t) { return u0 + uprime0 * t; };
    return ProblemSpec{std::move(kernel), std::move(g), t_end};
}

ProblemSpec linear_problem(const Real& a, const Real& b, const Real& t_end) {
    check_horizon(t_end);
    KernelSpec kernel;
    kernel.name = "linear";
    kernel.params = {{"a", a}, {"b", b}};
    kernel.eval = [a](const Real&, const Real&, const Real& u) { return a * u; };
    kernel.eval_du = [a](const Real&, const Real&, const Real&) { return a; };
    SourceFn g = [b](const Real&) { return b; };
    return ProblemSpec{std::move(kernel), std::move(g), t_end};
}

std::vector<std::string> registered_kernels() { return {"bratu", "linear"}; }

ProblemSpec make_problem(const std::string& name, const std::map<std::string, Real>& params,
                         const Real& t_end) {
    if (name == "bratu") {
        return bratu_problem(require_param(params, "lambda", name),
                             require_param(params, "u0", name),
                             require_param(params, "uprime0", name), t_end);
    }
    if (name == "linear") {
        return linear_problem(require_param(params, "a", name),
                              require_param(params, "b", name), t_end);
    }
    throw ConfigError("unknown kernel \"" + name + "\"; registered kernels are bratu, linear");
}

}  // namespace volterra
