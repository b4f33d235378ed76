#pragma once

/**
 * Error taxonomy for the Y-system realization library.
 *
 * Every failure mode that a caller can meaningfully distinguish gets its own
 * exception type.  All of them derive from ysys::error (itself a
 * std::runtime_error), so callers that do not care can catch the base.
 *
 * Key design decisions.  Verification failures (a relation that does not
 * hold, a period that is not minimal, ...) are exceptions rather than status
 * codes: the library treats them as contract violations of the mathematical
 * construction, and the CLI maps them to exit code 1.  Malformed input is
 * RejectedInput and maps to exit code 2.
 */

#include <stdexcept>
#include <string>

namespace ysys {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input sequence outside the accepted domain (n1 < 2, n_a < 1, excluded (2)).
struct RejectedInput : error {
    using error::error;
};

/// An arc label that does not exist in the triangulation / system at hand.
struct UnknownLabel : error {
    using error::error;
};

/// A boundary point failed to classify as exactly one interval-tree case.
struct ClassificationFailure : error {
    using error::error;
};

/// A set of arcs that should be pairwise compatible is not (or a flip result
/// would cross the rest of the triangulation).
struct CompatibilityFailure : error {
    using error::error;
};

/// Forward mutation did not act as the reflection across the current axis.
struct ReflectionMismatch : error {
    using error::error;
};

/// The two-step rotation law Gamma(u+2) = Sigma^{r2}(nu(Gamma(u))) failed.
struct RotationMismatch : error {
    using error::error;
};

/// The requested verification needs values outside the trajectory window.
struct WindowTooSmall : error {
    using error::error;
};

/// Mutation times observed in the trajectory disagree with the parity
/// prediction theta(u) even; invalidates the p_{F+1} convention.
struct OccurrenceMismatch : error {
    using error::error;
};

/// A Y-system (or T-system) relation failed to hold exactly / in tolerance.
struct RelationViolation : error {
    using error::error;
};

/// Values at u and u + (claimed period) differ.
struct PeriodicityViolation : error {
    using error::error;
};

/// A proper divisor of the claimed period is already a period.
struct MinimalityViolation : error {
    using error::error;
};

/// A c-vector with mixed signs appeared (sign coherence broken).
struct SignIncoherence : error {
    using error::error;
};

/// Exact arithmetic hit a zero denominator (degenerate field input).
struct DivisionByZero : error {
    using error::error;
};

/// A point (a,m,u) expected in the even bisection class is not in it.
struct NotInPlusClass : error {
    using error::error;
};

/// A z-assignment with coincident values (cross-ratios undefined).
struct DegenerateZ : error {
    using error::error;
};

/// A counting / dilogarithm identity failed.
struct IdentityViolation : error {
    using error::error;
};

/// Generic mathematical-domain violation (e.g. Rogers L outside [0,1]).
struct DomainError : error {
    using error::error;
};

}  // namespace ysys
