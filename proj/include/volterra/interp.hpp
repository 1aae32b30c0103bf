#pragma once

#include <cstddef>

#include "volterra/grid.hpp"
#include "volterra/precision.hpp"

namespace volterra {

/// Piecewise-linear interpolant of the nodal values at x. Exact at nodes.
/// x must lie within the grid (a hairline of rounding fuzz below t_0 or
/// above t_N is clamped; anything farther out raises ExtrapolationError).
Real interp(const Real& x, const SolutionVector& v);

/// The piecewise-linear nodal basis: phi_j is 1 at node j, 0 at every other
/// node, supported on [t_{j-1}, t_{j+1}]. Any interpolant decomposes as
/// sum_j v_j * phi_j(s).
Real hat_function(std::size_t j, const Real& s, const Grid& grid);

}  // namespace volterra
