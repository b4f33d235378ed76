#pragma once

/**
 * Rogers dilogarithm sums over one full doubled period, and the integer
 * sign-census identities they collapse to.
 *
 * Over the occurrences in [0, 2r) the scaled sums (6 / pi^2) * sum of
 * L(1 / (1 + Y)) and of L(Y / (1 + Y)) are integers, independent of the
 * seed values: each equals the number of occurrences whose coefficient
 * c-vector is positive (respectively negative) in the
 * principal-coefficient tropical run, and both counts have closed forms
 * in r, r^(2) and the generation sizes.  dilog_identity_check runs one
 * float trajectory and one tropical trajectory over the same schedule
 * and verifies the whole chain: sign coherence of every c-vector, the
 * analytic sums against the closed forms, the counts against the same
 * closed forms, and the per-generation refinement of the census.
 *
 * Key design decisions.  The tropical run is the single source of sign
 * information; every c-vector must be coherently signed or the check
 * aborts (SignIncoherence), so the census needs no geometric side
 * channel.  The float seed is drawn through the same rational generator
 * used by exact runs, keeping seeds comparable across semifields.  L is
 * evaluated from the power series of the classical dilogarithm with one
 * reflection at 1/2 (absolute accuracy near 1e-15); sums use a
 * fixed-shape blocked pairwise tree evaluated in parallel, so totals are
 * bit-identical for any thread count, with a compensated serial sum kept
 * alongside as a reference.
 */

#include <gmpxx.h>

#include <vector>

#include "ysys/contfrac.hpp"
#include "ysys/errors.hpp"
#include "ysys/geometry.hpp"
#include "ysys/schedule.hpp"
#include "ysys/seeds.hpp"

namespace ysys {

// ===========================================================================
// Rogers dilogarithm
// ===========================================================================

/**
 * Rogers L on [0, 1]: L(x) = Li_2(x) + log(x) log(1 - x) / 2, with
 * L(0) = 0 and L(1) = pi^2 / 6 exact.  Satisfies the reflection law
 * L(x) + L(1 - x) = pi^2 / 6.  Throws DomainError outside [0, 1].
 */
double rogers_L(double x);

// ===========================================================================
// Deterministic summation
// ===========================================================================

/**
 * Blocked pairwise (tree) sum; block boundaries and tree shape depend
 * only on the length, and blocks are evaluated in parallel, so the
 * result is identical for any thread count.
 */
double pairwise_sum(const std::vector<double>& xs);

/** Compensated (Kahan) serial sum, the accuracy reference. */
double kahan_sum(const std::vector<double>& xs);

// ===========================================================================
// The identity check
// ===========================================================================

struct DilogReport {
    long occurrences = 0;      ///< forward mutation points in [0, 2r)
    double s_plus = 0.0;       ///< (6 / pi^2) sum of L(1 / (1 + Y))
    double s_minus = 0.0;      ///< (6 / pi^2) sum of L(Y / (1 + Y))
    long n_plus = 0;           ///< occurrences with positive c-vector
    long n_minus = 0;          ///< occurrences with negative c-vector
    long m_plus = 0;           ///< closed form both totals must equal
    long m_minus = 0;
    mpq_class a_f;             ///< r^(2) / r, the partial-fraction invariant
    std::vector<long> n_plus_by_gen;   ///< census refined by generation
    std::vector<long> n_minus_by_gen;
};

/**
 * Run the float and tropical trajectories over [0, 2r] from rng_seed and
 * verify every layer of the identity chain; throws SignIncoherence on a
 * mixed-sign c-vector, OccurrenceMismatch if the two runs disagree on
 * the flip pattern, and IdentityViolation (naming the first failing
 * quantity) when any total misses its closed form; the analytic sums
 * must land within 1e-6 of theirs.
 */
DilogReport dilog_identity_check(const ContinuedFractionTable& t,
                                 bool punctured, unsigned rng_seed);

}  // namespace ysys
