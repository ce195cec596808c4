#include "gimvi/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace gimvi {

namespace {

constexpr double kDivergenceGuard = 1e12;
constexpr double kRk4Stability = 2.5; // conservative |z| bound for classical RK4

void write_row(std::ostream& os, double t, const Vec& w, double psi, double phi, bool has_phi,
               double phi1, double phi2) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", t);
    os << buf;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", w[i]);
        os << ',' << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", psi);
    os << ',' << buf << ',';
    if (has_phi) {
        std::snprintf(buf, sizeof(buf), "%.17g", phi);
        os << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", phi1);
    os << ',' << buf;
    std::snprintf(buf, sizeof(buf), "%.17g", phi2);
    os << ',' << buf << '\n';
}

} // namespace

void DynParams::validate() const {
    if (!(a0 > 0.0 && a1 > 0.0 && a2 > 0.0))
        throw Error("dynamics coefficients a0, a1, a2 must be strictly positive");
}

void Trajectory::write_csv(std::ostream& os) const {
    const int n = states.empty() ? 0 : states.front().dim();
    os << 't';
    for (int i = 0; i < n; ++i) os << ",w" << i;
    os << ",psi_norm,phi,phi1,phi2\n";
    for (std::size_t k = 0; k < times.size(); ++k) {
        write_row(os, times[k], states[k].v1, residual_norms[k],
                  has_distances() ? distance_sq[k] : 0.0, has_distances(), deriv1_sq[k],
                  deriv2_sq[k]);
    }
}

Vec residual(const ProblemInstance& inst, const Vec& w) {
    const Vec fw = inst.F(w);
    return fw - prox(inst.omega, inst.h, inst.gamma, fw - inst.gamma * inst.g(w));
}

double residual_lipschitz(const ProblemInstance& inst) {
    return 2.0 * inst.constants.eta + inst.gamma * inst.constants.beta;
}

TripleVec phi_map(const ProblemInstance& inst, const DynParams& params, const TripleVec& v) {
    params.validate();
    return {v.v2, v.v3,
            -params.a1 * v.v2 - params.a2 * v.v3 - params.a0 * residual(inst, v.v1)};
}

// ---------------------------------------------------------------------------
// integrators
// ---------------------------------------------------------------------------

namespace {

// Generic fixed-step RK4 over TripleVec phase space. `rhs` must fill the
// derivative for a given state; `record` consumes (t, state, psi_norm).
template <typename Rhs>
Trajectory rk4_run(const ProblemInstance& inst, const Rhs& rhs, TripleVec state, double t0,
                   double T, double dt, const std::optional<Vec>& w_star,
                   double stop_residual) {
    if (!(dt > 0.0)) throw Error("integration requires dt > 0");
    if (!(T > t0)) throw Error("integration requires T > t0");

    const long long steps = std::llround((T - t0) / dt);
    Trajectory traj;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);

    for (long long k = 0;; ++k) {
        const double t = t0 + static_cast<double>(k) * dt;
        const double psi = residual(inst, state.v1).norm();

        traj.times.push_back(t);
        traj.states.push_back(state);
        traj.residual_norms.push_back(psi);
        traj.deriv1_sq.push_back(state.v2.squaredNorm());
        traj.deriv2_sq.push_back(state.v3.squaredNorm());
        if (w_star) traj.distance_sq.push_back((state.v1 - *w_star).squaredNorm());

        if (k >= steps) break;
        if (stop_residual > 0.0 && psi <= stop_residual) break;

        const TripleVec k1 = rhs(state);
        const TripleVec k2 = rhs(state + (0.5 * dt) * k1);
        const TripleVec k3 = rhs(state + (0.5 * dt) * k2);
        const TripleVec k4 = rhs(state + dt * k3);
        state += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if (!(state.norm() <= kDivergenceGuard))
            throw StepDiverged("trajectory norm exceeded 1e12");
    }
    return traj;
}

} // namespace

Trajectory integrate_third_order(const ProblemInstance& inst, const DynParams& params,
                                 const TripleVec& init, double t0, double T, double dt,
                                 const std::optional<Vec>& w_star, double stop_residual) {
    params.validate();
    if (!(compute_c(inst) > 0.0)) throw Error("integration requires c > 0 on the instance");
    auto rhs = [&](const TripleVec& v) -> TripleVec {
        return {v.v2, v.v3,
                -params.a1 * v.v2 - params.a2 * v.v3 - params.a0 * residual(inst, v.v1)};
    };
    return rk4_run(inst, rhs, init, t0, T, dt, w_star, stop_residual);
}

Trajectory integrate_first_order_baseline(const ProblemInstance& inst, double rho,
                                          const Vec& init, double t0, double T, double dt,
                                          const std::optional<Vec>& w_star,
                                          double stop_residual) {
    if (!(rho > 0.0)) throw Error("first-order baseline requires rho > 0");
    if (!(compute_c(inst) > 0.0)) throw Error("integration requires c > 0 on the instance");
    const Vec zero = Vec::Zero(init.size());
    // state lives in the first slot; the second carries the actual derivative
    auto rhs = [&](const TripleVec& v) -> TripleVec {
        const Vec wdot = -rho * residual(inst, v.v1);
        return {wdot, zero, zero};
    };
    Trajectory traj = rk4_run(inst, rhs, TripleVec{init, -rho * residual(inst, init), zero}, t0,
                              T, dt, w_star, stop_residual);
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        traj.states[k].v2 = -rho * residual(inst, traj.states[k].v1);
        traj.deriv1_sq[k] = traj.states[k].v2.squaredNorm();
        traj.deriv2_sq[k] = 0.0;
    }
    return traj;
}

Trajectory integrate_second_order_baseline(const ProblemInstance& inst, double kappa,
                                           double rho, const std::pair<Vec, Vec>& init,
                                           double t0, double T, double dt,
                                           const std::optional<Vec>& w_star,
                                           double stop_residual) {
    if (!(rho > 0.0) || !(kappa > 0.0))
        throw Error("second-order baseline requires kappa, rho > 0");
    if (!(compute_c(inst) > 0.0)) throw Error("integration requires c > 0 on the instance");
    const Vec zero = Vec::Zero(init.first.size());
    auto rhs = [&](const TripleVec& v) -> TripleVec {
        return {v.v2, -kappa * v.v2 - rho * residual(inst, v.v1), zero};
    };
    Trajectory traj = rk4_run(inst, rhs, TripleVec{init.first, init.second, zero}, t0, T, dt,
                              w_star, stop_residual);
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        traj.states[k].v3 =
            -kappa * traj.states[k].v2 - rho * residual(inst, traj.states[k].v1);
        traj.deriv2_sq[k] = traj.states[k].v3.squaredNorm();
    }
    return traj;
}

// ---------------------------------------------------------------------------
// step-size heuristics
// ---------------------------------------------------------------------------

double stable_step_third(const DynParams& params, double psi_lipschitz) {
    params.validate();
    // Fujiwara bound on the roots of s^3 + a2 s^2 + a1 s + a0 L
    const double rho = 2.0 * std::max({params.a2, std::sqrt(params.a1),
                                       std::cbrt(params.a0 * std::max(psi_lipschitz, 1e-300))});
    return kRk4Stability / std::max(rho, 1e-12);
}

double stable_step_second(double kappa, double rho, double psi_lipschitz) {
    const double bound = 2.0 * std::max(kappa, std::sqrt(rho * std::max(psi_lipschitz, 1e-300)));
    return kRk4Stability / std::max(bound, 1e-12);
}

double stable_step_first(double rho, double psi_lipschitz) {
    return kRk4Stability / std::max(rho * std::max(psi_lipschitz, 1e-300), 1e-12);
}

} // namespace gimvi
