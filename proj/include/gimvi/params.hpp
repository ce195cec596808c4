#pragma once

#include <cstdint>
#include <utility>

#include "gimvi/dynamics.hpp"
#include "gimvi/report.hpp"

namespace gimvi {

/// Derived constants governing the continuous-time convergence analysis:
///   C2 = c1 a1 / a0            A1 = c1 a2 / a0
///   C1 = c1 a2 a1 / a0 - 3     A0 = (c1/a0)(a2^2 - 2 a1)
///   C0 = c1 a1^2 / a0 - 2 a2
struct ContinuousPack {
    double C2 = 0.0, C1 = 0.0, C0 = 0.0;
    double A1 = 0.0, A0 = 0.0;
};

/// Derived constants governing the discrete-time convergence analysis:
///   B2 = c1 a1 / a0 - 3
///   B1 = c1 a2 a1 / a0 - 2 a2 - 3
///   B0 = c1 a1^2 / a0 - 2 a2 - a1
///   D1 = (c1/a0)(a2 - 2 a1) + 3
///   D0 = (c1/a0)(a2^2 - 2 a1 - a2 a1) + a2 + 3
///   E0 = (c1/a0)(1 - a2 + a1) - 1
struct DiscretePack {
    double B2 = 0.0, B1 = 0.0, B0 = 0.0;
    double D1 = 0.0, D0 = 0.0, E0 = 0.0;
};

ContinuousPack continuous_pack(double c1, double a0, double a1, double a2);
DiscretePack discrete_pack(double c1, double a0, double a1, double a2);

/// delta = 1/(c1^2 c^2), the scale parameter of the explicit feasible regions.
double compute_delta(double c, double c1);

/// Exponential-rate condition set at rate parameter eps > 0:
///   -eps^3 + a2 eps^2 - a1 eps + c1 c^2 a0 >= 0
///   C2 eps^2 - C1 eps + C0 >= 0
///   3 eps^2 - 2 a2 eps + a1 >= 0
///   -2 C2 eps + C1 >= 0
///   -A1 eps + A0 >= 0
///   a2 > 2 eps           (strict)
FeasibilityReport check_thm32(const ContinuousPack& pack, double c, double c1, double a0,
                              double a1, double a2, double eps);

/// Linear-rate condition set at rate parameter xi in (0,1); also evaluates
/// the transformed conditions under l = 1/(1-xi) and reports any sign
/// disagreement between the two forms. Throws InvalidXi outside (0,1).
FeasibilityReport check_thm42(const DiscretePack& pack, double c, double c1, double a0,
                              double a1, double a2, double xi);

/// The three discrete feasibility inequalities
///   (c1/a0)(1 - a2 + a1) > 1,  (c1/a0)(2 a1 - a2) < 3,  c1 a1 / a0 > 3.
FeasibilityReport check_assumption41(double c1, double a0, double a1, double a2);

/// Samplers for the explicit feasible regions. Each draws strictly inside
/// its region (5% margins) so the corresponding checker passes.
///
/// Small-eps region: a1 < a2^2/2, a0 < c1 * min{a1 a2 / 3, a1^2 / (2 a2)}.
DynParams synth_cor35(double c1, std::uint64_t seed);

/// eps = 1 region:
///   a2 > max{3, 3 delta + 2, 4 delta}
///   max{2 a2 - 3, delta (2 a2 - 3)} < a1 < a2 (a2 - 1) / 2
///   (a1 - a2 + 1)/(c1 c^2) < a0 < c1 min{a1 (a2-2)/3, a1 (a1-a2+1)/(2 a2-3)}
/// Returns the tuple together with eps = 1.
std::pair<DynParams, double> synth_thm36(double c, double c1, std::uint64_t seed);

/// eps = 2 region:
///   a2 > max{8 delta, 6, 6 delta + 4}
///   max{4 (a2-3), 4 delta (a2-3)} < a1 < a2 (a2 - 2) / 2
///   2 (a1-2a2+4)/(c1 c^2) < a0 < c1 a1 min{(a1-2a2+4)/(2(a2-3)), (a2-4)/3}
/// Returns the tuple together with eps = 2.
std::pair<DynParams, double> synth_eps2(double c, double c1, std::uint64_t seed);

/// Linear-rate region: a2 < 2, max{0, a2-1} < a1 < a2^2/(a2+2),
/// a0 < c1 * min{a1^2/(a1 + 2 a2), 1 - a2 + a1}.
DynParams synth_cor43(double c1, std::uint64_t seed);

/// Intersection region valid for both rate families:
/// a2 < 1, a1 < a2^2/(a2+2), a0 < c1 * min{a1 a2 / 3, a1^2/(a1 + 2 a2)}.
DynParams synth_common(double c1, std::uint64_t seed);

/// Supremum of feasible eps in (0, a2/2): grid scan (1e4 points) plus 60
/// bisection steps on the bracketing cell. Returns 0 when no grid point is
/// feasible.
double max_feasible_eps(const ContinuousPack& pack, double c, double c1,
                        const DynParams& params);

/// Largest feasible xi in (0, 1), same search strategy. Returns 0 when no
/// grid point is feasible.
double max_feasible_xi(const DiscretePack& pack, double c, double c1,
                       const DynParams& params);

} // namespace gimvi
