#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gimvi/discrete.hpp"
#include "gimvi/dynamics.hpp"
#include "gimvi/instance.hpp"

namespace gimvi {

/// Distances below this floor are treated as converged and excluded from
/// log-linear fits.
inline constexpr double kDistanceFloor = 1e-14;

/// Least-squares fit of log-distance against time (continuous) or iteration
/// index (discrete). slope estimates the decay exponent, respectively log q.
/// A fully converged series yields the sentinel slope = -infinity.
struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::pair<int, int> window{0, 0}; // first/last sample index used
    std::optional<double> max_tail_ratio; // discrete fits only

    bool degenerate() const;
};

/// Damped residual iteration w <- w - c1 * Psi(w) from a seeded Gaussian
/// start, run until |Psi(w)| <= tol; the result is validated against the
/// variational characterization at 100 sampled feasible points. Throws
/// NoConvergence after 1e7 iterations.
Vec reference_solution(const ProblemInstance& inst, double tol, std::uint64_t seed = 0);

/// Fit over the trailing window_fraction of samples whose distance exceeds
/// the floor. The trailing window suppresses the polynomial prefactor of the
/// exponential bound.
RateFit fit_exponential_rate(const Trajectory& traj, double window_fraction);

/// Same on (k, log distance); additionally reports the largest consecutive
/// distance ratio inside the window.
RateFit fit_linear_rate(const IterateHistory& hist, double window_fraction);

enum class TheoremMode { Thm32, Thm42 };

struct RunRecord {
    std::uint64_t seed = 0;
    double slope = 0.0;
    double r2 = 0.0;
    bool monotone_tail = false;
};

/// Outcome of a multi-run empirical rate verification.
struct Verdict {
    TheoremMode mode = TheoremMode::Thm32;
    DynParams params;
    double eps_or_xi = 0.0;
    std::vector<RunRecord> runs;
    std::string verdict; // "PASS", "FAIL", or "NotApplicable"

    nlohmann::json to_json() const;
};

/// Runs the selected dynamics from 10 seeded initial points and grades the
/// fitted rates: continuous runs must reach slope <= -(eps - 0.25) (margin
/// absorbs the polynomial prefactor), discrete runs must reach q < 1; all
/// runs must have eventually monotone decreasing distances. Infeasible
/// parameters yield NotApplicable without running.
Verdict verify_theorem(const ProblemInstance& inst, TheoremMode mode, const DynParams& params,
                       double eps_or_xi, double horizon, std::uint64_t base_seed = 1);

} // namespace gimvi
