#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gimvi/prox.hpp"
#include "gimvi/types.hpp"

namespace gimvi {

/// Recipe for drawing random certified instances.
///
/// "spd-affine":   F = (I + nu*A)w + b with A spectrally normalized Gaussian
///                 noise, g = g_scale*F's matrix + mu*B noise + offset. The
///                 symmetric part of M stays positive definite and the
///                 coupling G^T M stays positive definite, so all four
///                 constants are certifiable from spectra.
/// "identity-box": F = g = identity plus offsets, Omega = [-1,1]^n. The
///                 1-D member with zero offsets is the canonical instance.
struct InstanceRecipe {
    std::string family = "spd-affine";
    double nu = 0.05;         // spread of F around the identity
    double mu = 0.02;         // magnitude of the g perturbation
    double g_scale = 1.0;     // g matrix = g_scale * M + mu * noise
    double offset_scale = 0.5;
    int gamma_grid = 21;      // stepsizes scanned for c(gamma) > 0
};

/// Full problem data: operators, feasible set, h, stepsize gamma, and the
/// certified constants. Immutable after construction.
struct ProblemInstance {
    int dim = 0;
    AffineOp F, g;
    FeasibleSet omega;
    HSpec h;
    double gamma = 1.0;
    InstanceConstants constants;
    bool certified = false; // constants computed from spectral quantities

    /// Throws Error when any structural or certification invariant fails.
    void validate() const;
};

/// c = lambda + gamma*zeta - eta^2/2 - gamma^2*beta/2 - 1/2.
double compute_c(const InstanceConstants& k, double gamma);
double compute_c(const ProblemInstance& inst);

/// c1 = c / (2*eta + gamma*beta)^2. Throws NonPositiveC when c <= 0.
double compute_c1(const InstanceConstants& k, double gamma);
double compute_c1(const ProblemInstance& inst);

/// Stepsize upper bounds. paper_value evaluates
///     (c + sqrt(c^2 + beta*(2*lambda - eta^2 - 1))) / beta
/// verbatim with c taken at the instance stepsize; quadratic_root is the
/// positive root of c(gamma) = 0 and is the authoritative admissibility
/// bound. Either value is absent when its square-root argument is negative.
/// Throws Error when beta = 0.
struct GammaBarResult {
    std::optional<double> paper_value;
    std::optional<double> quadratic_root;
};
GammaBarResult gamma_bar(const ProblemInstance& inst);

/// Exact constants of an affine pair from spectral quantities:
/// eta = sigma_max(M), lambda = lambda_min(sym M), beta = sigma_max(G),
/// zeta = lambda_min(sym(G^T M)).
InstanceConstants spectral_constants(const AffineOp& F, const AffineOp& g);

/// Empirical constants from sampled pairs. One-sided by construction:
/// eta_hat <= eta, beta_hat <= beta, lambda_hat >= lambda, zeta_hat >= zeta
/// for exact affine constants. Sampling bounds, not certificates.
InstanceConstants estimate_constants(const ProblemInstance& inst, int samples,
                                     std::uint64_t seed);

/// Draws an instance from the recipe. Throws RecipeInfeasible when the drawn
/// operators violate zeta > 0 or c(gamma) <= 0 on the whole stepsize grid.
ProblemInstance make_affine_instance(int dim, std::uint64_t seed,
                                     const InstanceRecipe& recipe = {});

/// F = g = identity, Omega = [-1,1]^n, h = 0, gamma = 1. Constants are all 1
/// and c = 1/2. The dim = 1 member is the canonical instance used throughout
/// the test suites.
ProblemInstance canonical_instance(int dim = 1);

/// Named certification checks, one row per invariant (used by `validate`).
struct InstanceCheck {
    std::string name;
    bool pass = false;
    double value = 0.0;
};
std::vector<InstanceCheck> validate_checks(const ProblemInstance& inst);

} // namespace gimvi
