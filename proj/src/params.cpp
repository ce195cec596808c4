#include "gimvi/params.hpp"

#include <algorithm>
#include <cmath>

#include "gimvi/errors.hpp"
#include "gimvi/rng.hpp"

namespace gimvi {

namespace {
constexpr int kGridPoints = 10000;
constexpr int kBisectSteps = 60;

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw Error(std::string(what) + " must be strictly positive");
}

// Uniform draw from the open interval (lo, hi), inset by 5% of the width on
// both ends so strict inequalities survive floating-point evaluation.
double inset_uniform(Rng& rng, double lo, double hi) {
    const double w = hi - lo;
    if (!(w > 0.0)) throw EmptyRegion("parameter interval collapsed");
    return rng.uniform(lo + 0.05 * w, hi - 0.05 * w);
}

} // namespace

ContinuousPack continuous_pack(double c1, double a0, double a1, double a2) {
    require_positive(c1, "c1");
    require_positive(a0, "a0");
    require_positive(a1, "a1");
    require_positive(a2, "a2");
    ContinuousPack p;
    p.C2 = c1 * a1 / a0;
    p.C1 = c1 * a2 * a1 / a0 - 3.0;
    p.C0 = c1 * a1 * a1 / a0 - 2.0 * a2;
    p.A1 = c1 * a2 / a0;
    p.A0 = (c1 / a0) * (a2 * a2 - 2.0 * a1);
    return p;
}

DiscretePack discrete_pack(double c1, double a0, double a1, double a2) {
    require_positive(c1, "c1");
    require_positive(a0, "a0");
    require_positive(a1, "a1");
    require_positive(a2, "a2");
    DiscretePack p;
    p.B2 = c1 * a1 / a0 - 3.0;
    p.B1 = c1 * a2 * a1 / a0 - 2.0 * a2 - 3.0;
    p.B0 = c1 * a1 * a1 / a0 - 2.0 * a2 - a1;
    p.D1 = (c1 / a0) * (a2 - 2.0 * a1) + 3.0;
    p.D0 = (c1 / a0) * (a2 * a2 - 2.0 * a1 - a2 * a1) + a2 + 3.0;
    p.E0 = (c1 / a0) * (1.0 - a2 + a1) - 1.0;
    return p;
}

double compute_delta(double c, double c1) {
    require_positive(c, "c");
    require_positive(c1, "c1");
    return 1.0 / (c1 * c1 * c * c);
}

// ---------------------------------------------------------------------------
// condition checkers
// ---------------------------------------------------------------------------

FeasibilityReport check_thm32(const ContinuousPack& pack, double c, double c1, double a0,
                              double a1, double a2, double eps) {
    require_positive(eps, "eps");
    FeasibilityReport r;
    auto ge0 = [&r](const std::string& name, double lhs) {
        r.conditions.push_back({name, lhs, lhs, lhs >= 0.0});
    };
    const double cubic = -eps * eps * eps + a2 * eps * eps - a1 * eps + c1 * c * c * a0;
    ge0("rate-cubic", cubic);
    ge0("C-quadratic", pack.C2 * eps * eps - pack.C1 * eps + pack.C0);
    ge0("damping-quadratic", 3.0 * eps * eps - 2.0 * a2 * eps + a1);
    ge0("C-linear", -2.0 * pack.C2 * eps + pack.C1);
    ge0("A-linear", -pack.A1 * eps + pack.A0);
    const double strict = a2 - 2.0 * eps;
    r.conditions.push_back({"a2-gt-2eps", strict, strict, strict > 0.0});

    r.verdict = std::all_of(r.conditions.begin(), r.conditions.end(),
                            [](const FeasibilityCondition& fc) { return fc.pass; });
    return r;
}

FeasibilityReport check_thm42(const DiscretePack& pack, double c, double c1, double a0,
                              double a1, double a2, double xi) {
    if (!(xi > 0.0) || xi >= 1.0)
        throw InvalidXi("xi must lie in (0, 1): l = 1/(1-xi) must exceed 1");

    FeasibilityReport r;
    auto ge0 = [&r](const std::string& name, double lhs) {
        r.conditions.push_back({name, lhs, lhs, lhs >= 0.0});
    };
    const double cc2a0 = c1 * c * c * a0;
    ge0("rate-cubic", -xi * xi * xi + a2 * xi * xi - a1 * xi + cc2a0);
    ge0("B-quadratic", pack.B2 * xi * xi - pack.B1 * xi + pack.B0);
    ge0("damping-quadratic", 3.0 * xi * xi - 2.0 * a2 * xi + a1);
    ge0("B-linear", -2.0 * pack.B2 * xi + pack.B1);
    ge0("D-linear", -pack.D1 * xi + pack.D0);
    const double strict = a2 - 3.0 * xi;
    r.conditions.push_back({"a2-gt-3xi", strict, strict, strict > 0.0});

    const std::size_t n_primal = r.conditions.size();
    r.verdict = std::all_of(r.conditions.begin(), r.conditions.end(),
                            [](const FeasibilityCondition& fc) { return fc.pass; });

    // Transformed conditions under l = 1/(1-xi); each equals its primal
    // counterpart scaled by a positive power of l, so the signs must agree.
    const double l = 1.0 / (1.0 - xi);
    const double one_l = 1.0 - l;
    ge0("rate-cubic-l", cc2a0 * l * l * l + a1 * l * l * one_l + (a2 * l + one_l) * one_l * one_l);
    ge0("B-quadratic-l", pack.B0 * l * l + pack.B1 * one_l * l + pack.B2 * one_l * one_l);
    ge0("damping-quadratic-l", a1 * l * l + 2.0 * a2 * l * one_l + 3.0 * one_l * one_l);
    ge0("B-linear-l", pack.B1 * l + 2.0 * pack.B2 * one_l);
    ge0("D-linear-l", pack.D0 * l + pack.D1 * one_l);
    const double strict_l = l * a2 + 3.0 * one_l;
    r.conditions.push_back({"a2-gt-3xi-l", strict_l, strict_l, strict_l > 0.0});

    bool agree = true;
    for (std::size_t i = 0; i < n_primal; ++i) {
        const auto& primal = r.conditions[i];
        const auto& trans = r.conditions[i + n_primal];
        // disregard disagreements within rounding distance of the boundary
        const double scale = std::max({1.0, std::abs(primal.lhs), std::abs(trans.lhs)});
        if (primal.pass != trans.pass && std::min(std::abs(primal.lhs), std::abs(trans.lhs)) >
                                             1e-9 * scale)
            agree = false;
    }
    r.conditions.push_back(
        {"forms-agree", agree ? 1.0 : 0.0, agree ? 1.0 : 0.0, agree});
    return r;
}

FeasibilityReport check_assumption41(double c1, double a0, double a1, double a2) {
    require_positive(c1, "c1");
    require_positive(a0, "a0");
    FeasibilityReport r;
    const double t1 = (c1 / a0) * (1.0 - a2 + a1) - 1.0;
    const double t2 = 3.0 - (c1 / a0) * (2.0 * a1 - a2);
    const double t3 = c1 * a1 / a0 - 3.0;
    r.conditions.push_back({"shift-margin", t1, t1, t1 > 0.0});
    r.conditions.push_back({"drift-margin", t2, t2, t2 > 0.0});
    r.conditions.push_back({"momentum-margin", t3, t3, t3 > 0.0});
    r.verdict = r.conditions[0].pass && r.conditions[1].pass && r.conditions[2].pass;
    return r;
}

// ---------------------------------------------------------------------------
// region samplers
// ---------------------------------------------------------------------------

DynParams synth_cor35(double c1, std::uint64_t seed) {
    require_positive(c1, "c1");
    Rng rng(seed);
    DynParams p;
    p.a2 = rng.uniform(0.6, 2.0);
    p.a1 = 0.5 * p.a2 * p.a2 * rng.uniform(0.25, 0.95);
    p.a0 = c1 * std::min(p.a1 * p.a2 / 3.0, p.a1 * p.a1 / (2.0 * p.a2)) * rng.uniform(0.25, 0.95);
    return p;
}

std::pair<DynParams, double> synth_thm36(double c, double c1, std::uint64_t seed) {
    const double delta = compute_delta(c, c1);
    Rng rng(seed);

    DynParams p;
    const double a2_min = std::max({3.0, 3.0 * delta + 2.0, 4.0 * delta});
    p.a2 = a2_min * rng.uniform(1.05, 1.5);

    const double a1_lo = std::max(2.0 * p.a2 - 3.0, delta * (2.0 * p.a2 - 3.0));
    const double a1_hi = 0.5 * p.a2 * (p.a2 - 1.0);
    if (!(a1_lo < a1_hi)) throw EmptyRegion("momentum interval empty (bug)");
    p.a1 = inset_uniform(rng, a1_lo, a1_hi);

    const double a0_lo = (p.a1 - p.a2 + 1.0) / (c1 * c * c);
    const double a0_hi = c1 * std::min(p.a1 * (p.a2 - 2.0) / 3.0,
                                       p.a1 * (p.a1 - p.a2 + 1.0) / (2.0 * p.a2 - 3.0));
    if (!(a0_lo < a0_hi)) throw EmptyRegion("drive interval empty (bug)");
    p.a0 = inset_uniform(rng, a0_lo, a0_hi);
    return {p, 1.0};
}

std::pair<DynParams, double> synth_eps2(double c, double c1, std::uint64_t seed) {
    const double delta = compute_delta(c, c1);
    Rng rng(seed);

    DynParams p;
    const double a2_min = std::max({8.0 * delta, 6.0, 6.0 * delta + 4.0});
    p.a2 = a2_min * rng.uniform(1.05, 1.5);

    const double a1_lo = std::max(4.0 * (p.a2 - 3.0), 4.0 * delta * (p.a2 - 3.0));
    const double a1_hi = 0.5 * p.a2 * (p.a2 - 2.0);
    if (!(a1_lo < a1_hi)) throw EmptyRegion("momentum interval empty (bug)");
    p.a1 = inset_uniform(rng, a1_lo, a1_hi);

    const double a0_lo = 2.0 / (c1 * c * c) * (p.a1 - 2.0 * p.a2 + 4.0);
    const double a0_hi =
        c1 * p.a1 *
        std::min((p.a1 - 2.0 * p.a2 + 4.0) / (2.0 * (p.a2 - 3.0)), (p.a2 - 4.0) / 3.0);
    if (!(a0_lo < a0_hi)) throw EmptyRegion("drive interval empty (bug)");
    p.a0 = inset_uniform(rng, a0_lo, a0_hi);
    return {p, 2.0};
}

DynParams synth_cor43(double c1, std::uint64_t seed) {
    require_positive(c1, "c1");
    Rng rng(seed);
    DynParams p;
    p.a2 = rng.uniform(0.3, 1.9);
    const double a1_lo = std::max(0.0, p.a2 - 1.0);
    const double a1_hi = p.a2 * p.a2 / (p.a2 + 2.0);
    p.a1 = inset_uniform(rng, a1_lo, a1_hi);
    p.a0 = c1 * std::min(p.a1 * p.a1 / (p.a1 + 2.0 * p.a2), 1.0 - p.a2 + p.a1) *
           rng.uniform(0.25, 0.95);
    return p;
}

DynParams synth_common(double c1, std::uint64_t seed) {
    require_positive(c1, "c1");
    Rng rng(seed);
    DynParams p;
    p.a2 = rng.uniform(0.3, 0.95);
    p.a1 = p.a2 * p.a2 / (p.a2 + 2.0) * rng.uniform(0.25, 0.95);
    p.a0 = c1 * std::min(p.a1 * p.a2 / 3.0, p.a1 * p.a1 / (p.a1 + 2.0 * p.a2)) *
           rng.uniform(0.25, 0.95);
    return p;
}

// ---------------------------------------------------------------------------
// rate-parameter search
// ---------------------------------------------------------------------------

namespace {

template <typename Feasible>
double sup_feasible(double hi_open, const Feasible& feasible) {
    // largest feasible grid point, then bisect toward the infeasible side
    double best = 0.0;
    double next_bad = hi_open;
    for (int i = kGridPoints - 1; i >= 1; --i) {
        const double x = hi_open * static_cast<double>(i) / kGridPoints;
        if (feasible(x)) {
            best = x;
            next_bad = hi_open * static_cast<double>(i + 1) / kGridPoints;
            break;
        }
    }
    if (best == 0.0) return 0.0;
    double lo = best, hi = next_bad;
    for (int it = 0; it < kBisectSteps; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

} // namespace

double max_feasible_eps(const ContinuousPack& pack, double c, double c1,
                        const DynParams& params) {
    params.validate();
    auto feasible = [&](double eps) {
        return check_thm32(pack, c, c1, params.a0, params.a1, params.a2, eps).verdict;
    };
    return sup_feasible(0.5 * params.a2, feasible);
}

double max_feasible_xi(const DiscretePack& pack, double c, double c1, const DynParams& params) {
    params.validate();
    auto feasible = [&](double xi) {
        if (!(xi > 0.0) || xi >= 1.0) return false;
        return check_thm42(pack, c, c1, params.a0, params.a1, params.a2, xi).verdict;
    };
    return sup_feasible(1.0, feasible);
}

} // namespace gimvi
