#include "volterra/grid.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "volterra/errors.hpp"

namespace volterra {

Grid::Grid(std::vector<Real> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2) {
        throw ConfigError("a grid needs at least 2 nodes, got " +
                          std::to_string(nodes_.size()));
    }
    if (!nodes_.front().is_zero()) {
        throw ConfigError("the first grid node must be 0, got " +
                          nodes_.front().to_decimal());
    }
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        if (!(nodes_[i] < nodes_[i + 1])) {
            throw ConfigError("grid nodes must be strictly increasing; node " +
                              std::to_string(i + 1) + " is " + nodes_[i + 1].to_decimal() +
                              " after " + nodes_[i].to_decimal());
        }
    }
}

Grid Grid::uniform(const Real& t_end, const Real& step) {
    const PrecisionContext ctx = max(t_end, step).context();
    if (!(t_end > Real::zero(ctx))) {
        throw ConfigError("grid end must be positive, got " + t_end.to_decimal());
    }
    if (!(step > Real::zero(ctx))) {
        throw ConfigError("grid step must be positive, got " + step.to_decimal());
    }
    const Real ratio = t_end / step;
    const long count = std::lround(ratio.to_double());
    if (count < 1 ||
        abs(ratio - Real(count, ctx)) > Real::from_decimal("1e-10", ctx)) {
        throw ConfigError("step " + step.to_decimal() + " does not divide the interval [0, " +
                          t_end.to_decimal() + "] into a whole number of segments");
    }
    std::vector<Real> nodes;
    nodes.reserve(static_cast<std::size_t>(count) + 1);
    nodes.push_back(Real::zero(ctx));
    for (long i = 1; i < count; ++i) {
        nodes.push_back(i * step);
    }
    nodes.push_back(t_end.to_context(ctx));
    return Grid(std::move(nodes));
}

bool operator==(const Grid& a, const Grid& b) {
    if (&a == &b) return true;
    if (a.nodes_.size() != b.nodes_.size()) return false;
    for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
        if (a.nodes_[i] != b.nodes_[i]) return false;
    }
    return true;
}

SolutionVector::SolutionVector(std::shared_ptr<const Grid> grid, std::vector<Real> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_->size()) {
        throw ShapeError("solution vector has " + std::to_string(values_.size()) +
                         " values for a grid of " + std::to_string(grid_->size()) + " nodes");
    }
}

SolutionVector SolutionVector::constant(std::shared_ptr<const Grid> grid, const Real& value) {
    std::vector<Real> values(grid->size(), value);
    return SolutionVector(std::move(grid), std::move(values));
}

Real sup_norm_diff(const SolutionVector& a, const SolutionVector& b) {
    if (a.grid_ptr() != b.grid_ptr() && !(a.grid() == b.grid())) {
        throw ShapeError("sup_norm_diff requires both vectors on the same grid");
    }
    Real best = abs(a[0] - b[0]);
    for (std::size_t i = 1; i < a.size(); ++i) {
        Real d = abs(a[i] - b[i]);
        if (d > best) best = d;
    }
    return best;
}

}  // namespace volterra
