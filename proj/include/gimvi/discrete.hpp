#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "gimvi/dynamics.hpp"
#include "gimvi/instance.hpp"
#include "gimvi/report.hpp"
#include "gimvi/types.hpp"

namespace gimvi {

/// Record of a discrete run. x(k) = |w(k) - w*|^2 when a reference solution
/// was supplied; y1, y2, y3 are squared norms of the forward differences of
/// order 1..3 (each list shorter than the iterate list by its order).
struct IterateHistory {
    std::vector<Vec> iterates;
    std::vector<double> residual_norms;
    std::vector<double> distance_sq;
    std::vector<double> y1, y2, y3;

    /// Worst norm of w^D3(k) + a2 w^D2(k) + a1 w^D(k) + a0 Psi(w(k)) over the
    /// recorded run; near machine precision for a faithful implementation.
    double max_scheme_residual = 0.0;

    std::size_t size() const { return iterates.size(); }
    bool has_distances() const { return !distance_sq.empty(); }

    /// Columns: k, w0..w{n-1}, psi_norm, x, y1, y2, y3. Cells whose index is
    /// out of range for a difference order are left empty.
    void write_csv(std::ostream& os) const;
};

/// p-fold forward difference of a sequence; output is shorter by p.
/// Throws LengthTooShort unless z.size() > p.
std::vector<Vec> forward_difference(const std::vector<Vec>& z, int order);

/// Three-term recursion
///   w(k+3) = (3-a2) w(k+2) + (2a2-a1-3) w(k+1) + (a1+1-a2) w(k) - a0 Psi(w(k)).
Vec step_scheme(const ProblemInstance& inst, const DynParams& params, const Vec& w_k,
                const Vec& w_k1, const Vec& w_k2);

/// The same update written with two extrapolation terms:
///   w(k+2) + (2-a2)(w(k+2)-w(k+1)) + (a2-a1-1)(w(k+1)-w(k)) - a0 Psi(w(k)).
/// Agrees with step_scheme up to floating-point reassociation.
Vec step_scheme_momentum(const ProblemInstance& inst, const DynParams& params, const Vec& w_k,
                         const Vec& w_k1, const Vec& w_k2);

/// Runs the recursion from three starting iterates until the newest iterate
/// satisfies |Psi(w(k))| <= tol or max_iter iterates are recorded.
/// Throws Diverged when an iterate norm exceeds 1e12.
IterateHistory run_scheme(const ProblemInstance& inst, const DynParams& params,
                          const std::array<Vec, 3>& init, int max_iter, double tol,
                          const std::optional<Vec>& w_star = std::nullopt);

/// Randomized verification of the forward-difference identities
///   <y,z>^D(k)        = <y^D, z^D> + <y^D, z> + <y, z^D>
///   theta^{k+1} z^D(k) = (theta^k z)^D(k) + (1-theta) theta^k z(k)
///   (|x|^2)^D(k)      = |x^D(k)|^2 + 2 <x^D(k), x(k)>
/// on random finite sequences, to 1e-10 relative accuracy.
AuditReport check_difference_identities(std::uint64_t seed, int trials);

} // namespace gimvi
