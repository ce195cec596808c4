#pragma once

#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "gimvi/instance.hpp"
#include "gimvi/types.hpp"

namespace gimvi {

/// Coefficients of the third-order system
///     w''' + a2 w'' + a1 w' + a0 Psi(w) = 0,   a0, a1, a2 > 0.
struct DynParams {
    double a0 = 0.0;
    double a1 = 0.0;
    double a2 = 0.0;

    void validate() const; // throws Error unless all strictly positive
};

/// Fixed-step trajectory record. distance_sq is filled only when a reference
/// solution was supplied; deriv1_sq and deriv2_sq hold |w'|^2 and |w''|^2.
struct Trajectory {
    std::vector<double> times;
    std::vector<TripleVec> states;
    std::vector<double> residual_norms;
    std::vector<double> distance_sq;
    std::vector<double> deriv1_sq;
    std::vector<double> deriv2_sq;

    std::size_t size() const { return times.size(); }
    bool has_distances() const { return !distance_sq.empty(); }

    /// Columns: t, w0..w{n-1}, psi_norm, phi, phi1, phi2 at full double
    /// precision. phi cells are empty when no reference solution is known.
    void write_csv(std::ostream& os) const;
};

/// Natural residual Psi(w) = F(w) - P_Omega^{gamma h}(F(w) - gamma g(w)).
/// Zero exactly at solutions.
Vec residual(const ProblemInstance& inst, const Vec& w);

/// Lipschitz modulus of the residual map: 2*eta + gamma*beta.
double residual_lipschitz(const ProblemInstance& inst);

/// First-order reformulation of the third-order system:
/// Phi(v1, v2, v3) = (v2, v3, -a1 v2 - a2 v3 - a0 Psi(v1)).
TripleVec phi_map(const ProblemInstance& inst, const DynParams& params, const TripleVec& v);

/// Classical fixed-step RK4 for v' = Phi(v), recording state and diagnostics
/// every dt. Deterministic. Throws StepDiverged when a state norm exceeds
/// 1e12. When stop_residual > 0 the run ends early once |Psi(w)| falls below
/// it (the stopping sample is recorded).
Trajectory integrate_third_order(const ProblemInstance& inst, const DynParams& params,
                                 const TripleVec& init, double t0, double T, double dt,
                                 const std::optional<Vec>& w_star = std::nullopt,
                                 double stop_residual = 0.0);

/// w' = -rho * Psi(w). Recorded states carry the actual derivative in the
/// second slot and zeros in the third.
Trajectory integrate_first_order_baseline(const ProblemInstance& inst, double rho,
                                          const Vec& init, double t0, double T, double dt,
                                          const std::optional<Vec>& w_star = std::nullopt,
                                          double stop_residual = 0.0);

/// w'' + kappa w' + rho Psi(w) = 0 with constant damping.
Trajectory integrate_second_order_baseline(const ProblemInstance& inst, double kappa,
                                           double rho, const std::pair<Vec, Vec>& init,
                                           double t0, double T, double dt,
                                           const std::optional<Vec>& w_star = std::nullopt,
                                           double stop_residual = 0.0);

/// Step sizes keeping RK4 inside its stability region, from the Fujiwara
/// bound on the companion spectrum of the linearized system.
double stable_step_third(const DynParams& params, double psi_lipschitz);
double stable_step_second(double kappa, double rho, double psi_lipschitz);
double stable_step_first(double rho, double psi_lipschitz);

} // namespace gimvi
