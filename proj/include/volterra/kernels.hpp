#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "volterra/precision.hpp"

namespace volterra {

using KernelFn = std::function<Real(const Real& t, const Real& s, const Real& u)>;
using SourceFn = std::function<Real(const Real& t)>;

/// A kernel K(t, s, u) with its u-derivative and the parameters it was
/// built from. eval and eval_du must be total on the problem domain.
struct KernelSpec {
    std::string name;
    std::map<std::string, Real> params;
    KernelFn eval;
    KernelFn eval_du;
};

/// One complete problem: find u with u(t) = g(t) + integral of
/// K(t, s, u(s)) over s in [0, t], posed on [0, t_end].
struct ProblemSpec {
    KernelSpec kernel;
    SourceFn inhomogeneous;
    Real t_end;
};

/// K(t,s,u) = -lambda * (t - s) * e^u with g(t) = u0 + uprime0 * t. The
/// integral form of u'' = -lambda * e^u, u(0) = u0, u'(0) = uprime0.
ProblemSpec bratu_problem(const Real& lambda, const Real& u0, const Real& uprime0,
                          const Real& t_end);

/// K(t,s,u) = a * u with constant g = b; the solution is b * e^(a t).
ProblemSpec linear_problem(const Real& a, const Real& b, const Real& t_end);

/// Kernel names the CLI accepts.
std::vector<std::string> registered_kernels();

/// Builds a problem by registry name. Required params: "bratu" needs
/// lambda, u0, uprime0; "linear" needs a, b. Unknown names or missing
/// params raise ConfigError.
ProblemSpec make_problem(const std::string& name, const std::map<std::string, Real>& params,
                         const Real& t_end);

}  // namespace volterra
