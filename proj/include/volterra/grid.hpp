#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "volterra/precision.hpp"

namespace volterra {

/// Discretization 0 = t_0 < t_1 < ... < t_N = T. Immutable after
/// construction and freely shareable.
class Grid {
public:
    /// Validates: at least two nodes, first node zero, strictly increasing.
    explicit Grid(std::vector<Real> nodes);

    /// Nodes {0, step, 2*step, ..., t_end}. The interior nodes are computed
    /// as i*step (one rounding each); the final node is t_end itself.
    /// t_end/step must be within 1e-10 of a whole number.
    static Grid uniform(const Real& t_end, const Real& step);

    std::size_t size() const noexcept { return nodes_.size(); }
    /// Number of segments [t_i, t_{i+1}], i.e. size() - 1.
    std::size_t segments() const noexcept { return nodes_.size() - 1; }
    const Real& node(std::size_t i) const { return nodes_.at(i); }
    const std::vector<Real>& nodes() const noexcept { return nodes_; }
    const Real& t_end() const noexcept { return nodes_.back(); }

    friend bool operator==(const Grid& a, const Grid& b);

private:
    std::vector<Real> nodes_;
};

/// Nodal values attached to a grid. The grid is shared, not copied, so
/// vectors from the same solve alias one grid object.
class SolutionVector {
public:
    SolutionVector(std::shared_ptr<const Grid> grid, std::vector<Real> values);
    SolutionVector(const Grid& grid, std::vector<Real> values)
        : SolutionVector(std::make_shared<const Grid>(grid), std::move(values)) {}

    static SolutionVector constant(std::shared_ptr<const Grid> grid, const Real& value);

    const Grid& grid() const noexcept { return *grid_; }
    std::shared_ptr<const Grid> grid_ptr() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }
    const Real& operator[](std::size_t i) const { return values_.at(i); }
    const std::vector<Real>& values() const noexcept { return values_; }

private:
    std::shared_ptr<const Grid> grid_;
    std::vector<Real> values_;
};

/// max_i |a_i - b_i|. The two vectors must live on the same grid (the same
/// object or one with identical nodes).
Real sup_norm_diff(const SolutionVector& a, const SolutionVector& b);

}  // namespace volterra
