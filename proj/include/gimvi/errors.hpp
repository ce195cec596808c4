#pragma once

#include <stdexcept>

namespace gimvi {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A random instance recipe produced operators violating the certification
/// requirements (zeta <= 0, or c(gamma) <= 0 on the whole stepsize grid).
struct RecipeInfeasible : Error {
    using Error::Error;
};

/// c <= 0, so c1 and every quantity derived from it are undefined.
struct NonPositiveC : Error {
    using Error::Error;
};

/// Square-root argument of a stepsize bound is negative.
struct NegativeDiscriminant : Error {
    using Error::Error;
};

/// The projected-gradient inner solver hit its iteration cap.
struct InnerSolveFailed : Error {
    using Error::Error;
};

/// A difference operator was applied to a sequence shorter than its order.
struct LengthTooShort : Error {
    using Error::Error;
};

/// A continuous trajectory left the admissible region (norm > 1e12).
struct StepDiverged : Error {
    using Error::Error;
};

/// A discrete iterate sequence left the admissible region (norm > 1e12).
struct Diverged : Error {
    using Error::Error;
};

/// xi outside (0, 1); the rate substitution l = 1/(1-xi) requires xi in (0,1).
struct InvalidXi : Error {
    using Error::Error;
};

/// A parameter region that is provably nonempty collapsed numerically.
/// Seeing this exception indicates a bug, not a bad input.
struct EmptyRegion : Error {
    using Error::Error;
};

/// The reference-solution iteration did not reach tolerance within its cap.
struct NoConvergence : Error {
    using Error::Error;
};

} // namespace gimvi
