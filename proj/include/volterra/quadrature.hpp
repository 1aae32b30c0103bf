#pragma once

#include <cstddef>
#include <functional>
#include <utility>

#include "volterra/grid.hpp"
#include "volterra/precision.hpp"

namespace volterra {

enum class QuadratureKind {
    TanhSinh,
    GaussLegendreComposite,
};

/// How hard integrate() tries: which rule, the absolute/relative error
/// target 10^(-target_digits), and how many refinement levels it may spend
/// before giving up with an AccuracyError.
struct QuadratureRule {
    QuadratureKind kind = QuadratureKind::TanhSinh;
    int target_digits = 45;
    int max_refinement_level = 12;
    /// Points per panel for the Gauss-Legendre composite rule (exact on
    /// polynomials of degree <= 2*gauss_points - 1 per panel).
    int gauss_points = 16;

    /// tanh-sinh targeting ctx.decimal_digits() - 5 digits.
    static QuadratureRule defaults(const PrecisionContext& ctx);
};

using Integrand = std::function<Real(const Real&)>;
using PairIntegrand = std::function<std::pair<Real, Real>(const Real&)>;

/// Definite integral of f over [lower, upper], refined until the last two
/// levels agree within 10^(-target_digits) * (1 + |result|). Throws
/// AccuracyError (carrying the best estimate) if the budget runs out.
Real integrate(const Integrand& f, const Real& lower, const Real& upper,
               const QuadratureRule& rule);

/// Integrates two functions sharing one evaluation sweep; both components
/// must meet the tolerance. Saves recomputing a common expensive factor.
std::pair<Real, Real> integrate_pair(const PairIntegrand& f, const Real& lower,
                                     const Real& upper, const QuadratureRule& rule);

/// Integral of f over [t_0, t_upper_node] split at the grid nodes, so
/// integrands with kinks at nodes (piecewise interpolants) stay smooth on
/// every panel the rule sees. Zero when upper_node is 0.
Real integrate_piecewise(const Integrand& f, const Grid& grid, std::size_t upper_node,
                         const QuadratureRule& rule);

}  // namespace volterra
