#include "gimvi/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "gimvi/params.hpp"

namespace gimvi {

bool RateFit::degenerate() const { return std::isinf(slope) && slope < 0.0; }

// ---------------------------------------------------------------------------
// reference solution
// ---------------------------------------------------------------------------

Vec reference_solution(const ProblemInstance& inst, double tol, std::uint64_t seed) {
    if (!(tol > 0.0)) throw Error("reference_solution requires tol > 0");
    const double c = compute_c(inst);
    if (!(c > 0.0)) throw Error("reference_solution requires c > 0");
    const double step = compute_c1(inst);

    Rng rng(seed);
    Vec w = gaussian_vec(rng, inst.dim);

    constexpr long long kCap = 10'000'000;
    Vec r = residual(inst, w);
    long long iter = 0;
    while (r.norm() > tol) {
        if (++iter > kCap) throw NoConvergence("reference solution iteration cap reached");
        w -= step * r;
        r = residual(inst, w);
    }

    // Validate against the variational characterization at the projected
    // point: the prox output must satisfy the defining inequality for
    // sampled feasible directions.
    const Vec arg = inst.F(w) - inst.gamma * inst.g(w);
    const Vec p = prox(inst.omega, inst.h, inst.gamma, arg);
    for (int t = 0; t < 100; ++t) {
        const Vec v = sample_feasible(inst.omega, rng);
        const double slack =
            (p - arg).dot(v - p) + inst.gamma * (inst.h.value(v) - inst.h.value(p));
        if (slack < -10.0 * tol * std::max(1.0, v.norm() + p.norm()))
            throw Error("reference solution failed the characterization audit");
    }
    return w;
}

// ---------------------------------------------------------------------------
// rate fitting
// ---------------------------------------------------------------------------

namespace {

RateFit sentinel_fit() {
    RateFit fit;
    fit.slope = -std::numeric_limits<double>::infinity();
    fit.intercept = std::numeric_limits<double>::quiet_NaN();
    fit.r_squared = 0.0;
    fit.window = {0, 0};
    return fit;
}

// Least squares of log(distance) against the abscissa over the trailing
// window of samples above the convergence floor.
RateFit fit_log_linear(const std::vector<double>& abscissa,
                       const std::vector<double>& distance_sq, double window_fraction,
                       bool tail_ratio) {
    if (abscissa.size() != distance_sq.size())
        throw Error("rate fit: mismatched series lengths");
    if (!(window_fraction > 0.0) || window_fraction > 1.0)
        throw Error("rate fit: window fraction must lie in (0, 1]");
    if (distance_sq.empty()) throw Error("rate fit: series has no distance data");

    std::vector<int> valid;
    valid.reserve(distance_sq.size());
    for (std::size_t i = 0; i < distance_sq.size(); ++i) {
        if (std::sqrt(distance_sq[i]) >= kDistanceFloor) valid.push_back(static_cast<int>(i));
    }
    if (valid.size() < 2) return sentinel_fit();

    const std::size_t count =
        std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(window_fraction * valid.size())));
    const std::size_t first = valid.size() - std::min(count, valid.size());

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const std::size_t m = valid.size() - first;
    for (std::size_t j = first; j < valid.size(); ++j) {
        const double x = abscissa[valid[j]];
        const double y = 0.5 * std::log(distance_sq[valid[j]]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(m);
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return sentinel_fit();

    RateFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.window = {valid[first], valid.back()};

    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (std::size_t j = first; j < valid.size(); ++j) {
        const double x = abscissa[valid[j]];
        const double y = 0.5 * std::log(distance_sq[valid[j]]);
        const double e = y - (fit.intercept + fit.slope * x);
        ss_res += e * e;
        ss_tot += (y - ybar) * (y - ybar);
    }
    fit.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : (ss_res == 0.0 ? 1.0 : 0.0);

    if (tail_ratio) {
        double worst = 0.0;
        bool any = false;
        for (std::size_t j = first; j + 1 < valid.size(); ++j) {
            if (valid[j + 1] != valid[j] + 1) continue; // only consecutive iterates
            const double dprev = std::sqrt(distance_sq[valid[j]]);
            const double dnext = std::sqrt(distance_sq[valid[j + 1]]);
            if (dprev > 0.0) {
                worst = std::max(worst, dnext / dprev);
                any = true;
            }
        }
        if (any) fit.max_tail_ratio = worst;
    }
    return fit;
}

} // namespace

RateFit fit_exponential_rate(const Trajectory& traj, double window_fraction) {
    if (!traj.has_distances())
        throw Error("fit_exponential_rate: trajectory carries no distance data");
    return fit_log_linear(traj.times, traj.distance_sq, window_fraction, false);
}

RateFit fit_linear_rate(const IterateHistory& hist, double window_fraction) {
    if (!hist.has_distances())
        throw Error("fit_linear_rate: history carries no distance data");
    std::vector<double> ks(hist.size());
    for (std::size_t i = 0; i < ks.size(); ++i) ks[i] = static_cast<double>(i);
    return fit_log_linear(ks, hist.distance_sq, window_fraction, true);
}

// ---------------------------------------------------------------------------
// theorem-level verification
// ---------------------------------------------------------------------------

namespace {

// Distances must be nonincreasing (up to rounding) over the fitted window.
bool monotone_tail(const std::vector<double>& distance_sq, const std::pair<int, int>& window) {
    for (int i = window.first; i < window.second; ++i) {
        const double d0 = std::sqrt(distance_sq[i]);
        const double d1 = std::sqrt(distance_sq[i + 1]);
        if (d1 < kDistanceFloor) return true; // converged past the floor
        if (d1 > d0 * (1.0 + 1e-9) + 1e-300) return false;
    }
    return true;
}

const char* mode_name(TheoremMode mode) {
    return mode == TheoremMode::Thm32 ? "thm32" : "thm42";
}

} // namespace

nlohmann::json Verdict::to_json() const {
    nlohmann::json j;
    j["mode"] = mode_name(mode);
    j["params"] = {{"a0", params.a0}, {"a1", params.a1}, {"a2", params.a2}};
    j["eps_or_xi"] = eps_or_xi;
    j["verdict"] = verdict;
    j["runs"] = nlohmann::json::array();
    for (const auto& r : runs) {
        j["runs"].push_back({{"seed", r.seed},
                             {"slope", r.slope},
                             {"r2", r.r2},
                             {"monotone_tail", r.monotone_tail}});
    }
    return j;
}

Verdict verify_theorem(const ProblemInstance& inst, TheoremMode mode, const DynParams& params,
                       double eps_or_xi, double horizon, std::uint64_t base_seed) {
    params.validate();
    const double c = compute_c(inst);
    const double c1 = compute_c1(inst);

    Verdict v;
    v.mode = mode;
    v.params = params;
    v.eps_or_xi = eps_or_xi;

    bool feasible = false;
    if (mode == TheoremMode::Thm32) {
        feasible = check_thm32(continuous_pack(c1, params.a0, params.a1, params.a2), c, c1,
                               params.a0, params.a1, params.a2, eps_or_xi)
                       .verdict;
    } else {
        feasible = eps_or_xi > 0.0 && eps_or_xi < 1.0 &&
                   check_thm42(discrete_pack(c1, params.a0, params.a1, params.a2), c, c1,
                               params.a0, params.a1, params.a2, eps_or_xi)
                       .verdict;
    }
    if (!feasible) {
        v.verdict = "NotApplicable";
        return v;
    }

    const Vec w_star = reference_solution(inst, 1e-12, 9999);
    constexpr int kRuns = 10;
    bool all_pass = true;

    for (int r = 0; r < kRuns; ++r) {
        const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(r);
        Rng rng(seed);
        Vec dir = gaussian_vec(rng, inst.dim);
        if (dir.norm() == 0.0) dir = Vec::Ones(inst.dim);
        const Vec w0 = w_star + rng.uniform(0.5, 2.0) * dir / dir.norm();

        RunRecord rec;
        rec.seed = seed;

        if (mode == TheoremMode::Thm32) {
            const double dt =
                std::min(0.01, stable_step_third(params, residual_lipschitz(inst)));
            const Trajectory traj = integrate_third_order(
                inst, params, TripleVec{w0, Vec::Zero(inst.dim), Vec::Zero(inst.dim)}, 0.0,
                horizon, dt, w_star, 1e-15);
            const RateFit fit = fit_exponential_rate(traj, 0.25);
            rec.slope = fit.slope;
            rec.r2 = fit.r_squared;
            rec.monotone_tail =
                fit.degenerate() || monotone_tail(traj.distance_sq, fit.window);
            // margin 0.25 absorbs the polynomial prefactor of the bound
            const bool rate_ok = fit.degenerate() || rec.slope <= -(eps_or_xi - 0.25);
            all_pass = all_pass && rate_ok && rec.monotone_tail;
        } else {
            const int max_iter = std::max(3, static_cast<int>(horizon));
            const IterateHistory hist =
                run_scheme(inst, params, {w0, w0, w0}, max_iter, 1e-12, w_star);
            const RateFit fit = fit_linear_rate(hist, 0.25);
            rec.slope = fit.slope;
            rec.r2 = fit.r_squared;
            rec.monotone_tail =
                fit.degenerate() || monotone_tail(hist.distance_sq, fit.window);
            const bool rate_ok =
                fit.degenerate() ||
                (rec.slope < 0.0 && (!fit.max_tail_ratio || *fit.max_tail_ratio < 1.0));
            all_pass = all_pass && rate_ok && rec.monotone_tail;
        }
        v.runs.push_back(rec);
    }

    v.verdict = all_pass ? "PASS" : "FAIL";
    return v;
}

} // namespace gimvi
