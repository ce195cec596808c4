#include "gimvi/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gimvi/errors.hpp"

namespace gimvi {

// ---------------------------------------------------------------------------
// FeasibleSet
// ---------------------------------------------------------------------------

FeasibleSet FeasibleSet::whole_space(int dim) {
    if (dim < 1) throw Error("feasible set dimension must be >= 1");
    FeasibleSet s;
    s.kind = Kind::WholeSpace;
    s.space_dim = dim;
    return s;
}

FeasibleSet FeasibleSet::box(Vec lo, Vec hi) {
    if (lo.size() != hi.size() || lo.size() < 1) throw Error("box bounds dimension mismatch");
    if (((hi - lo).array() < 0.0).any()) throw Error("box requires lo <= hi componentwise");
    FeasibleSet s;
    s.kind = Kind::Box;
    s.space_dim = static_cast<int>(lo.size());
    s.lo = std::move(lo);
    s.hi = std::move(hi);
    return s;
}

FeasibleSet FeasibleSet::ball(Vec center, double radius) {
    if (center.size() < 1) throw Error("ball center dimension must be >= 1");
    if (!(radius > 0.0)) throw Error("ball radius must be positive");
    FeasibleSet s;
    s.kind = Kind::Ball;
    s.space_dim = static_cast<int>(center.size());
    s.center = std::move(center);
    s.radius = radius;
    return s;
}

int FeasibleSet::dim() const { return space_dim; }

Vec FeasibleSet::project(const Vec& w) const {
    switch (kind) {
        case Kind::WholeSpace:
            return w;
        case Kind::Box:
            return w.cwiseMax(lo).cwiseMin(hi);
        case Kind::Ball: {
            const Vec r = w - center;
            const double n = r.norm();
            if (n <= radius) return w;
            return center + (radius / n) * r;
        }
    }
    throw Error("unreachable feasible-set kind");
}

bool FeasibleSet::contains(const Vec& v, double tol) const {
    switch (kind) {
        case Kind::WholeSpace:
            return true;
        case Kind::Box:
            return ((v - lo).array() >= -tol).all() && ((hi - v).array() >= -tol).all();
        case Kind::Ball:
            return (v - center).norm() <= radius + tol;
    }
    return false;
}

// ---------------------------------------------------------------------------
// HSpec
// ---------------------------------------------------------------------------

HSpec HSpec::zero() { return HSpec{}; }

HSpec HSpec::linear(Vec s) {
    HSpec h;
    h.kind = Kind::Linear;
    h.s = std::move(s);
    return h;
}

HSpec HSpec::separable_quadratic(Vec q) {
    if ((q.array() < 0.0).any()) throw Error("separable-quadratic weights must be >= 0");
    HSpec h;
    h.kind = Kind::SeparableQuadratic;
    h.q = std::move(q);
    return h;
}

HSpec HSpec::custom(ValueFn value, GradFn grad) {
    if (!value || !grad) throw Error("custom h requires value and subgradient callbacks");
    HSpec h;
    h.kind = Kind::Custom;
    h.value_fn = std::move(value);
    h.grad_fn = std::move(grad);
    return h;
}

double HSpec::value(const Vec& v) const {
    switch (kind) {
        case Kind::Zero:
            return 0.0;
        case Kind::Linear:
            return s.dot(v);
        case Kind::SeparableQuadratic:
            return 0.5 * (q.array() * v.array().square()).sum();
        case Kind::Custom:
            return value_fn(v);
    }
    throw Error("unreachable h kind");
}

Vec HSpec::subgradient(const Vec& v) const {
    switch (kind) {
        case Kind::Zero:
            return Vec::Zero(v.size());
        case Kind::Linear:
            return s;
        case Kind::SeparableQuadratic:
            return q.cwiseProduct(v);
        case Kind::Custom:
            return grad_fn(v);
    }
    throw Error("unreachable h kind");
}

// ---------------------------------------------------------------------------
// prox
// ---------------------------------------------------------------------------

namespace {

// Gradient Lipschitz constant of v -> gamma*h(v) + 0.5|w - v|^2 when known.
double objective_lipschitz(const HSpec& h, double gamma) {
    switch (h.kind) {
        case HSpec::Kind::Zero:
        case HSpec::Kind::Linear:
            return 1.0;
        case HSpec::Kind::SeparableQuadratic:
            return 1.0 + gamma * (h.q.size() ? h.q.maxCoeff() : 0.0);
        case HSpec::Kind::Custom:
            return 0.0; // unknown, estimated adaptively
    }
    return 1.0;
}

double objective(const FeasibleSet&, const HSpec& h, double gamma, const Vec& w, const Vec& v) {
    return gamma * h.value(v) + 0.5 * (w - v).squaredNorm();
}

} // namespace

Vec prox(const FeasibleSet& omega, const HSpec& h, double gamma, const Vec& w) {
    if (!(gamma > 0.0)) throw Error("prox requires gamma > 0");
    switch (h.kind) {
        case HSpec::Kind::Zero:
            return omega.project(w);
        case HSpec::Kind::Linear:
            // gamma<s,v> + 0.5|w-v|^2 = 0.5|v-(w-gamma s)|^2 + const
            return omega.project(w - gamma * h.s);
        case HSpec::Kind::SeparableQuadratic: {
            const Vec shrunk = w.array() / (1.0 + gamma * h.q.array());
            if (omega.kind == FeasibleSet::Kind::WholeSpace) return shrunk;
            if (omega.kind == FeasibleSet::Kind::Box) return omega.project(shrunk);
            // ball coupling is not separable
            return prox_fallback(omega, h, gamma, w);
        }
        case HSpec::Kind::Custom:
            return prox_fallback(omega, h, gamma, w);
    }
    throw Error("unreachable h kind");
}

Vec prox_fallback(const FeasibleSet& omega, const HSpec& h, double gamma, const Vec& w,
                  double tol, int max_iter) {
    if (!(gamma > 0.0)) throw Error("prox requires gamma > 0");
    double L = objective_lipschitz(h, gamma);
    if (L <= 0.0) L = 1.0; // initial guess for the custom variant, grown below
    const bool adaptive = h.kind == HSpec::Kind::Custom;

    Vec v = omega.project(w);
    for (int iter = 0; iter < max_iter; ++iter) {
        const Vec grad = (v - w) + gamma * h.subgradient(v);
        Vec v_next = omega.project(v - grad / L);
        if (adaptive) {
            // Grow L until the quadratic upper bound holds at the trial point.
            double f_v = objective(omega, h, gamma, w, v);
            for (int grow = 0; grow < 60; ++grow) {
                const Vec step = v_next - v;
                const double rhs = f_v + grad.dot(step) + 0.5 * L * step.squaredNorm();
                if (objective(omega, h, gamma, w, v_next) <= rhs + 1e-15 * std::abs(rhs)) break;
                L *= 2.0;
                v_next = omega.project(v - grad / L);
            }
        }
        const double move = (v_next - v).lpNorm<Eigen::Infinity>();
        v = std::move(v_next);
        if (move * L <= tol) return v;
    }
    throw InnerSolveFailed("prox inner solver hit iteration cap before tolerance");
}

// ---------------------------------------------------------------------------
// audits
// ---------------------------------------------------------------------------

Vec sample_feasible(const FeasibleSet& omega, Rng& rng) {
    const int n = omega.dim();
    switch (omega.kind) {
        case FeasibleSet::Kind::WholeSpace: {
            Vec v(n);
            for (int i = 0; i < n; ++i) v[i] = 2.0 * rng.normal();
            return v;
        }
        case FeasibleSet::Kind::Box: {
            Vec v(n);
            for (int i = 0; i < n; ++i) {
                const double lo = std::max(omega.lo[i], -1e3);
                const double hi = std::min(omega.hi[i], 1e3);
                v[i] = rng.uniform(lo, hi);
            }
            return v;
        }
        case FeasibleSet::Kind::Ball: {
            Vec dir(n);
            for (int i = 0; i < n; ++i) dir[i] = rng.normal();
            const double nd = dir.norm();
            if (nd == 0.0) return omega.center;
            const double r = omega.radius * std::pow(rng.uniform01(), 1.0 / n);
            return omega.center + (r / nd) * dir;
        }
    }
    throw Error("unreachable feasible-set kind");
}

AuditReport check_prox_inequalities(const FeasibleSet& omega, const HSpec& h, double gamma,
                                    int trials, std::uint64_t seed) {
    if (trials < 1) throw Error("check_prox_inequalities requires trials >= 1");
    Rng rng(seed);
    const int n = omega.dim();

    AuditCheck obtuse{"obtuse-angle (h=0)", std::numeric_limits<double>::infinity(), 0, trials};
    AuditCheck nonexp{"nonexpansiveness", std::numeric_limits<double>::infinity(), 0, trials};
    AuditCheck charac{"characterization", std::numeric_limits<double>::infinity(), 0, trials};

    for (int t = 0; t < trials; ++t) {
        Vec w(n), u(n);
        for (int i = 0; i < n; ++i) w[i] = 3.0 * rng.normal();
        for (int i = 0; i < n; ++i) u[i] = 3.0 * rng.normal();
        const Vec v = sample_feasible(omega, rng);

        // (i) metric projection only; with h present the property moves to (iii)
        const Vec p0 = omega.project(w);
        const double s1 = (w - p0).dot(p0 - v);
        obtuse.worst_slack = std::min(obtuse.worst_slack, s1);
        if (s1 < -kAuditTol) ++obtuse.violations;

        const Vec pw = prox(omega, h, gamma, w);
        const Vec pu = prox(omega, h, gamma, u);
        const double s2 = (w - u).norm() - (pw - pu).norm();
        nonexp.worst_slack = std::min(nonexp.worst_slack, s2);
        if (s2 < -kAuditTol) ++nonexp.violations;

        // (iii) at w* = prox(w): <w* - w, v - w*> + gamma h(v) - gamma h(w*) >= 0
        const double s3 = (pw - w).dot(v - pw) + gamma * (h.value(v) - h.value(pw));
        charac.worst_slack = std::min(charac.worst_slack, s3);
        if (s3 < -kAuditTol) ++charac.violations;
    }

    AuditReport report;
    report.checks = {obtuse, nonexp, charac};
    return report;
}

} // namespace gimvi
