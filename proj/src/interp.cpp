#include "volterra/interp.hpp"

#include <string>

#include "volterra/errors.hpp"

namespace volterra {

namespace {

// Clamps x into [t_0, t_N] when it is within endpoint fuzz, else throws.
// The fuzz absorbs quadrature nodes that land an ulp outside a segment.
Real clamp_to_grid(const Real& x, const Grid& grid) {
    const Real& lo = grid.node(0);
    const Real& hi = grid.t_end();
    if (x >= lo && x <= hi) return x;
    const int digits = max(x, hi).context().decimal_digits();
    const Real fuzz = Real::pow10(-digits + 5, x.context());
    if (x < lo && lo - x <= fuzz) return lo;
    if (x > hi && x - hi <= fuzz) return hi;
    throw ExtrapolationError("point " + x.to_decimal() + " lies outside the grid [" +
                             lo.to_decimal() + ", " + hi.to_decimal() + "]");
}

// Largest i with node(i) < x, given t_0 <= x <= t_N and x not equal to any
// node; the bracketing segment is [t_i, t_{i+1}].
std::size_t segment_below(const Real& x, const Grid& grid) {
    std::size_t lo = 0, hi = grid.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (grid.node(mid) < x) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

}  // namespace

Real interp(const Real& x, const SolutionVector& v) {
    const Grid& grid = v.grid();
    const Real xc = clamp_to_grid(x, grid);

    std::size_t lo = segment_below(xc, grid);
    // Exact node hits return the nodal value with no arithmetic at all.
    if (xc == grid.node(lo)) return v[lo];
    if (xc == grid.node(lo + 1)) return v[lo + 1];

    const Real& t0 = grid.node(lo);
    const Real& t1 = grid.node(lo + 1);
    return v[lo] + (v[lo + 1] - v[lo]) * ((xc - t0) / (t1 - t0));
}

Real hat_function(std::size_t j, const Real& s, const Grid& grid) {
    if (j >= grid.size()) {
        throw ShapeError("hat function index " + std::to_string(j) +
                         " out of range for a grid of " + std::to_string(grid.size()) +
                         " nodes");
    }
    const Real sc = clamp_to_grid(s, grid);
    const Real& tj = grid.node(j);
    const PrecisionContext ctx = max(sc, tj).context();

    if (sc == tj) return Real(1L, ctx);
    if (sc < tj) {
        if (j == 0) return Real::zero(ctx);
        const Real& left = grid.node(j - 1);
        if (sc <= left) return Real::zero(ctx);
        return (sc - left) / (tj - left);
    }
    if (j + 1 == grid.size()) return Real::zero(ctx);
    const Real& right = grid.node(j + 1);
    if (sc >= right) return Real::zero(ctx);
    return (right - sc) / (right - tj);
}

}  // namespace volterra
