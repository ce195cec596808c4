#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "gimvi/report.hpp"
#include "gimvi/types.hpp"

namespace gimvi {

/// Nonempty closed convex feasible set.
struct FeasibleSet {
    enum class Kind { WholeSpace, Box, Ball };

    Kind kind = Kind::WholeSpace;
    int space_dim = 0; // explicit for WholeSpace; derived otherwise
    Vec lo, hi;        // Box
    Vec center;        // Ball
    double radius = 0.0;

    static FeasibleSet whole_space(int dim);
    static FeasibleSet box(Vec lo, Vec hi);
    static FeasibleSet ball(Vec center, double radius);

    int dim() const;

    /// Metric projection onto the set (the h = 0 case).
    Vec project(const Vec& w) const;

    bool contains(const Vec& v, double tol = 1e-12) const;
};

/// Proper convex lower-semicontinuous function entering the generalized
/// projection. Named variants carry closed-form data; Custom carries value
/// and subgradient callbacks and is handled by the inner solver.
struct HSpec {
    enum class Kind { Zero, Linear, SeparableQuadratic, Custom };

    using ValueFn = std::function<double(const Vec&)>;
    using GradFn = std::function<Vec(const Vec&)>;

    Kind kind = Kind::Zero;
    Vec s; // Linear: h(v) = <s, v>
    Vec q; // SeparableQuadratic: h(v) = 0.5 * sum_i q_i v_i^2, q_i >= 0
    ValueFn value_fn;
    GradFn grad_fn;

    static HSpec zero();
    static HSpec linear(Vec s);
    static HSpec separable_quadratic(Vec q);
    static HSpec custom(ValueFn value, GradFn grad);

    double value(const Vec& v) const;
    Vec subgradient(const Vec& v) const;
};

/// Generalized h-projection
///     argmin_{v in Omega} gamma*h(v) + 0.5*|w - v|^2,
/// computed in closed form for the named (Omega, h) families and through
/// the projected-gradient inner solver otherwise. Unique by strong convexity.
Vec prox(const FeasibleSet& omega, const HSpec& h, double gamma, const Vec& w);

/// Projected-gradient inner solver for the prox objective. Reference
/// implementation the closed forms are checked against; also serves the
/// Custom variant. Throws InnerSolveFailed when the cap is hit.
Vec prox_fallback(const FeasibleSet& omega, const HSpec& h, double gamma, const Vec& w,
                  double tol = 1e-12, int max_iter = 100000);

/// Randomized audit of the projection inequalities:
///   (i)   obtuse-angle property of the metric projection (h = 0),
///   (ii)  nonexpansiveness of the generalized projection,
///   (iii) the variational characterization at the returned point.
/// Violations are reported, never thrown.
AuditReport check_prox_inequalities(const FeasibleSet& omega, const HSpec& h, double gamma,
                                    int trials, std::uint64_t seed);

/// Random point of Omega (uniform for boxes and balls, Gaussian for the
/// whole space). Used by audits and solution validation.
Vec sample_feasible(const FeasibleSet& omega, Rng& rng);

} // namespace gimvi
