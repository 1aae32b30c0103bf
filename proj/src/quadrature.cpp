#include "volterra/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "volterra/errors.hpp"

namespace volterra {

namespace {

struct NodeSet {
    std::vector<Real> x;
    std::vector<Real> w;
};

struct NodeCache {
    std::mutex mu;
    std::map<std::pair<int, int>, std::shared_ptr<const NodeSet>> entries;
};

// tanh-sinh abscissas/weights for one refinement level: level 0 holds the
// nodes at integer arguments k = 0, 1, 2, ...; level l > 0 holds the nodes
// new to that level, at odd multiples of 2^-l. Positive side only; the
// negative side follows by symmetry.
std::shared_ptr<const NodeSet> tanh_sinh_level(const PrecisionContext& work, int level) {
    static NodeCache cache;
    const std::pair<int, int> key{work.decimal_digits(), level};
    std::lock_guard<std::mutex> lock(cache.mu);
    if (auto it = cache.entries.find(key); it != cache.entries.end()) return it->second;

    auto nodes = std::make_shared<NodeSet>();
    const Real half_pi = Real::pi(work) / 2L;
    const Real one(1L, work);
    const Real weight_floor = Real::pow10(-(work.decimal_digits() + 5), work);
    const Real h = level == 0 ? one : one / (1L << level);
    const long stride = level == 0 ? 1 : 2;

    for (long k = level == 0 ? 0 : 1;; k += stride) {
        const Real t = k * h;
        const Real sh = sinh(t);
        const Real ch_inner = cosh(half_pi * sh);
        const Real x = tanh(half_pi * sh);
        const Real w = half_pi * cosh(t) / (ch_inner * ch_inner);
        if (k > 0 && (x == one || w < weight_floor)) break;
        nodes->x.push_back(x);
        nodes->w.push_back(w);
        if (k > 100000000) {
            throw AccuracyError("tanh-sinh node generation failed to terminate", "nan", "inf");
        }
    }
    cache.entries.emplace(key, nodes);
    return nodes;
}

// Gauss-Legendre abscissas/weights on [-1, 1] for an n-point rule,
// refined by Newton iteration from the Chebyshev estimates.
std::shared_ptr<const NodeSet> gauss_rule(const PrecisionContext& work, int n) {
    static NodeCache cache;
    const std::pair<int, int> key{work.decimal_digits(), n};
    std::lock_guard<std::mutex> lock(cache.mu);
    if (auto it = cache.entries.find(key); it != cache.entries.end()) return it->second;

    auto nodes = std::make_shared<NodeSet>();
    const Real one(1L, work);
    const Real two(2L, work);
    const Real step_floor = Real::pow10(-(work.decimal_digits() + 3), work);

    const auto legendre = [&](const Real& x, Real& pn, Real& dpn) {
        Real p_prev = one;
        Real p = x;
        for (long k = 2; k <= n; ++k) {
            Real p_next = ((2 * k - 1) * (x * p) - (k - 1) * p_prev) / k;
            p_prev = p;
            p = std::move(p_next);
        }
        pn = p;
        dpn = static_cast<long>(n) * (x * p - p_prev) / (x * x - one);
    };

    for (int i = 1; i <= n; ++i) {
        Real x = Real::from_double(
            std::cos(M_PI * (i - 0.25) / (n + 0.5)), work);
        Real pn = Real::zero(work);
        Real dpn = one;
        for (int iter = 0; iter < 200; ++iter) {
            legendre(x, pn, dpn);
            Real dx = pn / dpn;
            x -= dx;
            if (abs(dx) <= step_floor) break;
        }
        legendre(x, pn, dpn);
        nodes->x.push_back(x);
        nodes->w.push_back(two / ((one - x * x) * (dpn * dpn)));
    }
    cache.entries.emplace(key, nodes);
    return nodes;
}

struct PairSum {
    Real first;
    Real second;

    void add_scaled(const Real& w, const std::pair<Real, Real>& v) {
        first += w * v.first;
        second += w * v.second;
    }
};

[[noreturn]] void throw_accuracy(const Real& best, const Real& err, int target_digits,
                                 int levels) {
    throw AccuracyError("quadrature error estimate " + err.to_decimal() +
                            " still above 1e-" + std::to_string(target_digits) + " after " +
                            std::to_string(levels) + " refinement levels",
                        best.to_decimal(), err.to_decimal());
}

// Integral over [c - r, c + r] of both components of f, by tanh-sinh
// refinement. Returns values at the working context.
std::pair<Real, Real> tanh_sinh_integrate(const PairIntegrand& f, const Real& c, const Real& r,
                                          const PrecisionContext& work,
                                          const QuadratureRule& rule) {
    const Real one(1L, work);
    const Real target = Real::pow10(-rule.target_digits, work);
    PairSum total{Real::zero(work), Real::zero(work)};
    Real prev1 = Real::nan(work);
    Real prev2 = Real::nan(work);

    for (int level = 0; level <= rule.max_refinement_level; ++level) {
        const auto nodes = tanh_sinh_level(work, level);
        PairSum fresh{Real::zero(work), Real::zero(work)};
        for (std::size_t i = 0; i < nodes->x.size(); ++i) {
            const Real& y = nodes->x[i];
            if (level == 0 && i == 0) {
                fresh.add_scaled(nodes->w[i], f(c));
            } else {
                fresh.add_scaled(nodes->w[i], f(c + r * y));
                fresh.add_scaled(nodes->w[i], f(c - r * y));
            }
        }
        const Real h = one / (1L << level);
        if (level == 0) {
            total = std::move(fresh);
        } else {
            total.first = total.first / 2L + h * fresh.first;
            total.second = total.second / 2L + h * fresh.second;
        }

        if (level >= 2) {
            const Real err1 = r * abs(total.first - prev1);
            const Real err2 = r * abs(total.second - prev2);
            const Real tol1 = target * (one + abs(r * total.first));
            const Real tol2 = target * (one + abs(r * total.second));
            if (err1 <= tol1 && err2 <= tol2) {
                return {r * total.first, r * total.second};
            }
            if (level == rule.max_refinement_level) {
                throw_accuracy(r * total.first, max(err1, err2), rule.target_digits,
                               rule.max_refinement_level);
            }
        }
        prev1 = total.first;
        prev2 = total.second;
    }
    throw_accuracy(r * total.first, Real::nan(work), rule.target_digits,
                   rule.max_refinement_level);
}

// Same contract via the composite Gauss-Legendre rule, doubling the panel
// count per level.
std::pair<Real, Real> gauss_integrate(const PairIntegrand& f, const Real& lower,
                                      const Real& upper, const PrecisionContext& work,
                                      const QuadratureRule& rule) {
    if (rule.gauss_points < 1 || rule.gauss_points > 200) {
        throw ConfigError("gauss_points must be between 1 and 200, got " +
                          std::to_string(rule.gauss_points));
    }
    const auto nodes = gauss_rule(work, rule.gauss_points);
    const Real one(1L, work);
    const Real target = Real::pow10(-rule.target_digits, work);
    const Real span = upper.to_context(work) - lower.to_context(work);

    Real prev1 = Real::nan(work);
    Real prev2 = Real::nan(work);
    for (int level = 0; level <= rule.max_refinement_level; ++level) {
        const long panels = 1L << level;
        const Real width = span / panels;
        const Real radius = width / 2L;
        PairSum sum{Real::zero(work), Real::zero(work)};
        for (long p = 0; p < panels; ++p) {
            const Real center = lower + (2 * p + 1) * radius;
            for (std::size_t i = 0; i < nodes->x.size(); ++i) {
                sum.add_scaled(nodes->w[i], f(center + radius * nodes->x[i]));
            }
        }
        sum.first *= radius;
        sum.second *= radius;

        if (level >= 1) {
            const Real err1 = abs(sum.first - prev1);
            const Real err2 = abs(sum.second - prev2);
            const Real tol1 = target * (one + abs(sum.first));
            const Real tol2 = target * (one + abs(sum.second));
            if (err1 <= tol1 && err2 <= tol2) {
                return {sum.first, sum.second};
            }
            if (level == rule.max_refinement_level) {
                throw_accuracy(sum.first, max(err1, err2), rule.target_digits,
                               rule.max_refinement_level);
            }
        }
        prev1 = sum.first;
        prev2 = sum.second;
    }
    throw_accuracy(prev1, Real::nan(work), rule.target_digits, rule.max_refinement_level);
}

// Result context: wide enough for the operands and for the accuracy target
// itself, so a tight target on low-precision bounds still returns a value
// that can hold target_digits correct digits.
PrecisionContext ambient_context(const Real& lower, const Real& upper,
                                 const QuadratureRule& rule) {
    if (rule.target_digits < 1) {
        throw ConfigError("quadrature target_digits must be positive, got " +
                          std::to_string(rule.target_digits));
    }
    if (rule.max_refinement_level < 1 || rule.max_refinement_level > 30) {
        throw ConfigError("max_refinement_level must be between 1 and 30, got " +
                          std::to_string(rule.max_refinement_level));
    }
    int digits = lower.context().decimal_digits();
    if (upper.context().decimal_digits() > digits) digits = upper.context().decimal_digits();
    if (rule.target_digits + 5 > digits) digits = rule.target_digits + 5;
    if (digits < PrecisionContext::kMinDigits) digits = PrecisionContext::kMinDigits;
    return PrecisionContext(digits);
}

}  // namespace

QuadratureRule QuadratureRule::defaults(const PrecisionContext& ctx) {
    QuadratureRule rule;
    rule.target_digits = ctx.decimal_digits() - 5;
    return rule;
}

std::pair<Real, Real> integrate_pair(const PairIntegrand& f, const Real& lower,
                                     const Real& upper, const QuadratureRule& rule) {
    const PrecisionContext ambient = ambient_context(lower, upper, rule);
    if (lower > upper) {
        throw DomainError("integration bounds out of order: [" + lower.to_decimal() + ", " +
                          upper.to_decimal() + "]");
    }
    if (lower == upper) {
        return {Real::zero(ambient), Real::zero(ambient)};
    }
    const PrecisionContext work = ambient.with_guard_digits();
    std::pair<Real, Real> result = [&] {
        if (rule.kind == QuadratureKind::TanhSinh) {
            const Real c = (lower.to_context(work) + upper.to_context(work)) / 2L;
            const Real r = (upper.to_context(work) - lower.to_context(work)) / 2L;
            return tanh_sinh_integrate(f, c, r, work, rule);
        }
        return gauss_integrate(f, lower, upper, work, rule);
    }();
    return {result.first.to_context(ambient), result.second.to_context(ambient)};
}

Real integrate(const Integrand& f, const Real& lower, const Real& upper,
               const QuadratureRule& rule) {
    const PairIntegrand paired = [&f](const Real& x) {
        Real v = f(x);
        return std::pair<Real, Real>(v, v);
    };
    return integrate_pair(paired, lower, upper, rule).first;
}

Real integrate_piecewise(const Integrand& f, const Grid& grid, std::size_t upper_node,
                         const QuadratureRule& rule) {
    if (upper_node >= grid.size()) {
        throw ShapeError("upper node " + std::to_string(upper_node) +
                         " out of range for a grid of " + std::to_string(grid.size()) +
                         " nodes");
    }
    Real total = Real::zero(grid.node(0).context());
    for (std::size_t k = 0; k < upper_node; ++k) {
        total = total + integrate(f, grid.node(k), grid.node(k + 1), rule);
    }
    return total;
}

}  // namespace volterra
