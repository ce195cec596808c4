#include "gimvi/instance.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace gimvi {

void require_finite(const Vec& v, const char* what) {
    if (!v.allFinite()) throw Error(std::string(what) + " contains a non-finite entry");
}

void require_finite(const Mat& m, const char* what) {
    if (!m.allFinite()) throw Error(std::string(what) + " contains a non-finite entry");
}

Vec gaussian_vec(Rng& rng, int dim) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = rng.normal();
    return v;
}

Mat gaussian_mat(Rng& rng, int dim) {
    Mat m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = rng.normal();
    return m;
}

namespace {

double largest_singular_value(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m.transpose() * m);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double smallest_symmetric_eigenvalue(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.transpose()));
    return es.eigenvalues().minCoeff();
}

} // namespace

InstanceConstants spectral_constants(const AffineOp& F, const AffineOp& g) {
    InstanceConstants k;
    k.eta = largest_singular_value(F.M);
    k.lambda = smallest_symmetric_eigenvalue(F.M);
    k.beta = largest_singular_value(g.M);
    k.zeta = smallest_symmetric_eigenvalue(g.M.transpose() * F.M);
    return k;
}

double compute_c(const InstanceConstants& k, double gamma) {
    return k.lambda + gamma * k.zeta - 0.5 * k.eta * k.eta - 0.5 * gamma * gamma * k.beta - 0.5;
}

double compute_c(const ProblemInstance& inst) { return compute_c(inst.constants, inst.gamma); }

double compute_c1(const InstanceConstants& k, double gamma) {
    const double c = compute_c(k, gamma);
    if (!(c > 0.0)) throw NonPositiveC("c <= 0, c1 undefined");
    const double denom = 2.0 * k.eta + gamma * k.beta;
    return c / (denom * denom);
}

double compute_c1(const ProblemInstance& inst) { return compute_c1(inst.constants, inst.gamma); }

GammaBarResult gamma_bar(const ProblemInstance& inst) {
    const InstanceConstants& k = inst.constants;
    if (!(k.beta > 0.0)) throw Error("gamma_bar requires beta > 0");

    GammaBarResult out;
    const double base = k.beta * (2.0 * k.lambda - k.eta * k.eta - 1.0);

    const double c = compute_c(inst);
    const double disc_paper = c * c + base;
    if (disc_paper >= 0.0) out.paper_value = (c + std::sqrt(disc_paper)) / k.beta;

    // c(gamma) = -(beta/2) gamma^2 + zeta gamma + (lambda - eta^2/2 - 1/2);
    // the positive root bounds the admissible stepsizes from above.
    const double disc_root = k.zeta * k.zeta + base;
    if (disc_root >= 0.0) out.quadratic_root = (k.zeta + std::sqrt(disc_root)) / k.beta;

    if (!out.paper_value && !out.quadratic_root)
        throw NegativeDiscriminant("no admissible stepsize: both discriminants negative");
    return out;
}

// ---------------------------------------------------------------------------
// validation
// ---------------------------------------------------------------------------

std::vector<InstanceCheck> validate_checks(const ProblemInstance& inst) {
    std::vector<InstanceCheck> checks;
    const InstanceConstants& k = inst.constants;

    auto add = [&checks](const std::string& name, bool pass, double value) {
        checks.push_back({name, pass, value});
    };

    bool dims = inst.dim >= 1 && inst.F.dim() == inst.dim && inst.g.dim() == inst.dim &&
                inst.F.b.size() == inst.dim && inst.g.b.size() == inst.dim &&
                inst.omega.dim() == inst.dim;
    add("dimensions-consistent", dims, static_cast<double>(inst.dim));

    bool finite = inst.F.M.allFinite() && inst.F.b.allFinite() && inst.g.M.allFinite() &&
                  inst.g.b.allFinite();
    add("entries-finite", finite, 0.0);

    add("gamma-positive", inst.gamma > 0.0, inst.gamma);
    add("lambda-positive", k.lambda > 0.0, k.lambda);
    add("zeta-positive", k.zeta > 0.0, k.zeta);
    add("zeta-le-eta-beta", k.zeta <= k.eta * k.beta + 1e-12, k.eta * k.beta - k.zeta);
    add("lambda-le-eta", k.lambda <= k.eta + 1e-12, k.eta - k.lambda);

    const double c = compute_c(inst);
    add("c-positive", c > 0.0, c);

    if (k.beta > 0.0) {
        try {
            const auto gb = gamma_bar(inst);
            if (gb.quadratic_root)
                add("gamma-below-root", inst.gamma < *gb.quadratic_root, *gb.quadratic_root);
            else
                add("gamma-below-root", false, std::numeric_limits<double>::quiet_NaN());
        } catch (const Error&) {
            add("gamma-below-root", false, std::numeric_limits<double>::quiet_NaN());
        }
    }

    if (inst.certified) {
        const InstanceConstants sp = spectral_constants(inst.F, inst.g);
        const double drift = std::max({std::abs(sp.eta - k.eta), std::abs(sp.beta - k.beta),
                                       std::abs(sp.lambda - k.lambda), std::abs(sp.zeta - k.zeta)});
        add("constants-match-spectra", drift <= 1e-9, drift);
    }
    return checks;
}

void ProblemInstance::validate() const {
    for (const auto& check : validate_checks(*this)) {
        if (!check.pass) throw Error("instance invariant failed: " + check.name);
    }
}

// ---------------------------------------------------------------------------
// construction
// ---------------------------------------------------------------------------

namespace {

// Picks the grid stepsize maximizing c; the grid brackets the unconstrained
// maximizer zeta/beta.
double select_gamma(const InstanceConstants& k, int grid_points) {
    if (!(k.beta > 0.0)) throw RecipeInfeasible("beta nonpositive, no stepsize admissible");
    const double center = k.zeta / k.beta;
    double best_gamma = center;
    double best_c = -std::numeric_limits<double>::infinity();
    const int n = std::max(grid_points, 2);
    for (int i = 0; i < n; ++i) {
        const double gamma = center * (0.5 + i * (1.0 / (n - 1)));
        if (!(gamma > 0.0)) continue;
        const double c = compute_c(k, gamma);
        if (c > best_c) {
            best_c = c;
            best_gamma = gamma;
        }
    }
    if (!(best_c > 0.0)) throw RecipeInfeasible("c(gamma) <= 0 on the whole stepsize grid");
    return best_gamma;
}

} // namespace

ProblemInstance make_affine_instance(int dim, std::uint64_t seed, const InstanceRecipe& recipe) {
    if (dim < 1) throw Error("instance dimension must be >= 1");
    Rng rng(seed);

    ProblemInstance inst;
    inst.dim = dim;

    if (recipe.family == "identity-box") {
        inst.F = AffineOp::identity(dim);
        inst.g = AffineOp::identity(dim);
        inst.F.b = recipe.offset_scale * gaussian_vec(rng, dim);
        inst.g.b = recipe.offset_scale * gaussian_vec(rng, dim);
        inst.omega = FeasibleSet::box(Vec::Constant(dim, -1.0), Vec::Constant(dim, 1.0));
    } else if (recipe.family == "spd-affine") {
        Mat A = gaussian_mat(rng, dim);
        const double sa = largest_singular_value(A);
        Mat M = Mat::Identity(dim, dim);
        if (sa > 0.0) M += (recipe.nu / sa) * A;

        Mat B = gaussian_mat(rng, dim);
        const double sb = largest_singular_value(B);
        Mat G = recipe.g_scale * M;
        if (sb > 0.0) G += (recipe.mu / sb) * B;

        inst.F = {std::move(M), recipe.offset_scale * gaussian_vec(rng, dim)};
        inst.g = {std::move(G), recipe.offset_scale * gaussian_vec(rng, dim)};
        inst.omega = FeasibleSet::box(Vec::Constant(dim, -5.0), Vec::Constant(dim, 5.0));
    } else {
        throw Error("unknown instance recipe family: " + recipe.family);
    }

    inst.h = HSpec::zero();
    inst.constants = spectral_constants(inst.F, inst.g);
    if (!(inst.constants.zeta > 0.0)) throw RecipeInfeasible("zeta nonpositive");
    if (!(inst.constants.lambda > 0.0)) throw RecipeInfeasible("lambda nonpositive");
    inst.gamma = select_gamma(inst.constants, recipe.gamma_grid);
    inst.certified = true;
    inst.validate();
    return inst;
}

ProblemInstance canonical_instance(int dim) {
    ProblemInstance inst;
    inst.dim = dim;
    inst.F = AffineOp::identity(dim);
    inst.g = AffineOp::identity(dim);
    inst.omega = FeasibleSet::box(Vec::Constant(dim, -1.0), Vec::Constant(dim, 1.0));
    inst.h = HSpec::zero();
    inst.gamma = 1.0;
    inst.constants = {1.0, 1.0, 1.0, 1.0};
    inst.certified = true;
    return inst;
}

// ---------------------------------------------------------------------------
// empirical constants
// ---------------------------------------------------------------------------

InstanceConstants estimate_constants(const ProblemInstance& inst, int samples,
                                     std::uint64_t seed) {
    if (samples < 2) throw Error("estimate_constants requires samples >= 2");
    Rng rng(seed);
    const int n = inst.dim;

    InstanceConstants est;
    est.eta = 0.0;
    est.beta = 0.0;
    est.lambda = std::numeric_limits<double>::infinity();
    est.zeta = std::numeric_limits<double>::infinity();

    for (int t = 0; t < samples; ++t) {
        const Vec x = 2.0 * gaussian_vec(rng, n);
        const Vec y = 2.0 * gaussian_vec(rng, n);
        const Vec d = x - y;
        const double dn2 = d.squaredNorm();
        if (dn2 == 0.0) continue;

        const Vec df = inst.F(x) - inst.F(y);
        const Vec dg = inst.g(x) - inst.g(y);
        est.eta = std::max(est.eta, df.norm() / std::sqrt(dn2));
        est.beta = std::max(est.beta, dg.norm() / std::sqrt(dn2));
        est.lambda = std::min(est.lambda, df.dot(d) / dn2);
        est.zeta = std::min(est.zeta, df.dot(dg) / dn2);
    }
    return est;
}

} // namespace gimvi
