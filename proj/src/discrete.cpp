#include "gimvi/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace gimvi {

namespace {
constexpr double kDivergenceGuard = 1e12;
}

void IterateHistory::write_csv(std::ostream& os) const {
    const int n = iterates.empty() ? 0 : static_cast<int>(iterates.front().size());
    os << 'k';
    for (int i = 0; i < n; ++i) os << ",w" << i;
    os << ",psi_norm,x,y1,y2,y3\n";

    char buf[64];
    auto cell = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        os << buf;
    };
    for (std::size_t k = 0; k < iterates.size(); ++k) {
        os << k;
        for (int i = 0; i < n; ++i) {
            os << ',';
            cell(iterates[k][i]);
        }
        os << ',';
        cell(residual_norms[k]);
        os << ',';
        if (has_distances()) cell(distance_sq[k]);
        os << ',';
        if (k < y1.size()) cell(y1[k]);
        os << ',';
        if (k < y2.size()) cell(y2[k]);
        os << ',';
        if (k < y3.size()) cell(y3[k]);
        os << '\n';
    }
}

std::vector<Vec> forward_difference(const std::vector<Vec>& z, int order) {
    if (order < 1) throw Error("difference order must be >= 1");
    if (z.size() <= static_cast<std::size_t>(order))
        throw LengthTooShort("sequence too short for the requested difference order");
    std::vector<Vec> cur = z;
    for (int p = 0; p < order; ++p) {
        std::vector<Vec> next(cur.size() - 1);
        for (std::size_t k = 0; k + 1 < cur.size(); ++k) next[k] = cur[k + 1] - cur[k];
        cur = std::move(next);
    }
    return cur;
}

Vec step_scheme(const ProblemInstance& inst, const DynParams& params, const Vec& w_k,
                const Vec& w_k1, const Vec& w_k2) {
    params.validate();
    return (3.0 - params.a2) * w_k2 + (2.0 * params.a2 - params.a1 - 3.0) * w_k1 +
           (params.a1 + 1.0 - params.a2) * w_k - params.a0 * residual(inst, w_k);
}

Vec step_scheme_momentum(const ProblemInstance& inst, const DynParams& params, const Vec& w_k,
                         const Vec& w_k1, const Vec& w_k2) {
    params.validate();
    return w_k2 + (2.0 - params.a2) * (w_k2 - w_k1) + (params.a2 - params.a1 - 1.0) * (w_k1 - w_k) -
           params.a0 * residual(inst, w_k);
}

IterateHistory run_scheme(const ProblemInstance& inst, const DynParams& params,
                          const std::array<Vec, 3>& init, int max_iter, double tol,
                          const std::optional<Vec>& w_star) {
    params.validate();
    if (max_iter < 3) throw Error("run_scheme requires max_iter >= 3");
    if (!(tol > 0.0)) throw Error("run_scheme requires tol > 0");

    IterateHistory hist;
    hist.iterates = {init[0], init[1], init[2]};
    for (const Vec& w : hist.iterates) {
        require_finite(w, "initial iterate");
        hist.residual_norms.push_back(residual(inst, w).norm());
    }

    while (hist.residual_norms.back() > tol &&
           hist.iterates.size() < static_cast<std::size_t>(max_iter)) {
        const std::size_t k = hist.iterates.size() - 3;
        const Vec& wk = hist.iterates[k];
        const Vec& wk1 = hist.iterates[k + 1];
        const Vec& wk2 = hist.iterates[k + 2];

        const Vec psi_k = residual(inst, wk);
        Vec next = (3.0 - params.a2) * wk2 + (2.0 * params.a2 - params.a1 - 3.0) * wk1 +
                   (params.a1 + 1.0 - params.a2) * wk - params.a0 * psi_k;
        if (!(next.norm() <= kDivergenceGuard)) throw Diverged("iterate norm exceeded 1e12");

        // recombine as the difference equation to track the worst closure error
        const Vec d3 = next - 3.0 * wk2 + 3.0 * wk1 - wk;
        const Vec d2 = wk2 - 2.0 * wk1 + wk;
        const Vec d1 = wk1 - wk;
        const double closure =
            (d3 + params.a2 * d2 + params.a1 * d1 + params.a0 * psi_k).norm();
        hist.max_scheme_residual = std::max(hist.max_scheme_residual, closure);

        hist.residual_norms.push_back(residual(inst, next).norm());
        hist.iterates.push_back(std::move(next));
    }

    if (w_star) {
        hist.distance_sq.reserve(hist.iterates.size());
        for (const Vec& w : hist.iterates) hist.distance_sq.push_back((w - *w_star).squaredNorm());
    }
    auto sq_norms = [](const std::vector<Vec>& vs) {
        std::vector<double> out;
        out.reserve(vs.size());
        for (const Vec& v : vs) out.push_back(v.squaredNorm());
        return out;
    };
    if (hist.iterates.size() > 1) hist.y1 = sq_norms(forward_difference(hist.iterates, 1));
    if (hist.iterates.size() > 2) hist.y2 = sq_norms(forward_difference(hist.iterates, 2));
    if (hist.iterates.size() > 3) hist.y3 = sq_norms(forward_difference(hist.iterates, 3));
    return hist;
}

// ---------------------------------------------------------------------------
// difference-operator identities
// ---------------------------------------------------------------------------

AuditReport check_difference_identities(std::uint64_t seed, int trials) {
    if (trials < 1) throw Error("check_difference_identities requires trials >= 1");
    Rng rng(seed);

    AuditCheck product{"inner-product rule", -std::numeric_limits<double>::infinity(), 0, trials};
    AuditCheck shift{"theta-weighted shift", -std::numeric_limits<double>::infinity(), 0, trials};
    AuditCheck normsq{"norm-square rule", -std::numeric_limits<double>::infinity(), 0, trials};
    // slack here is the relative violation, so worst = max over trials
    product.worst_slack = 0.0;
    shift.worst_slack = 0.0;
    normsq.worst_slack = 0.0;

    constexpr int len = 12;
    constexpr int dim = 3;

    auto rel_err = [](double lhs, double rhs) {
        return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
    };
    auto rel_err_vec = [](const Vec& lhs, const Vec& rhs) {
        return (lhs - rhs).norm() / std::max({1.0, lhs.norm(), rhs.norm()});
    };

    for (int t = 0; t < trials; ++t) {
        std::vector<Vec> y(len), z(len), x(len);
        for (int k = 0; k < len; ++k) {
            y[k] = gaussian_vec(rng, dim);
            z[k] = gaussian_vec(rng, dim);
            x[k] = gaussian_vec(rng, dim);
        }
        const double theta = rng.uniform(-2.0, 2.0);

        for (int k = 0; k + 1 < len; ++k) {
            const Vec yd = y[k + 1] - y[k];
            const Vec zd = z[k + 1] - z[k];
            const Vec xd = x[k + 1] - x[k];

            // <y,z>^D(k) = <y^D, z^D> + <y^D, z> + <y, z^D>
            const double lhs1 = y[k + 1].dot(z[k + 1]) - y[k].dot(z[k]);
            const double rhs1 = yd.dot(zd) + yd.dot(z[k]) + y[k].dot(zd);
            const double e1 = rel_err(lhs1, rhs1);
            product.worst_slack = std::max(product.worst_slack, e1);
            if (e1 > 1e-10) ++product.violations;

            // theta^{k+1} z^D(k) = (theta^k z)^D(k) + (1-theta) theta^k z(k)
            const double tk = std::pow(theta, k);
            const double tk1 = std::pow(theta, k + 1);
            const Vec lhs2 = tk1 * zd;
            const Vec rhs2 = (tk1 * z[k + 1] - tk * z[k]) + (1.0 - theta) * tk * z[k];
            const double e2 = rel_err_vec(lhs2, rhs2);
            shift.worst_slack = std::max(shift.worst_slack, e2);
            if (e2 > 1e-10) ++shift.violations;

            // (|x|^2)^D(k) = |x^D(k)|^2 + 2 <x^D(k), x(k)>
            const double lhs3 = x[k + 1].squaredNorm() - x[k].squaredNorm();
            const double rhs3 = xd.squaredNorm() + 2.0 * xd.dot(x[k]);
            const double e3 = rel_err(lhs3, rhs3);
            normsq.worst_slack = std::max(normsq.worst_slack, e3);
            if (e3 > 1e-10) ++normsq.violations;
        }
    }

    AuditReport report;
    report.tol = 1e-10;
    report.checks = {product, shift, normsq};
    // identities are equalities: pass() must see them as slacks, flip sign
    for (auto& c : report.checks) c.worst_slack = -c.worst_slack;
    return report;
}

} // namespace gimvi
