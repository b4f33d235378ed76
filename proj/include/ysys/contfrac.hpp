#pragma once

/**
 * Continued-fraction data for an input sequence (n_1, ..., n_F).
 *
 * The whole construction is driven by the continued-fraction expansion
 *
 *     r / r2 = n_1 + 1/(n_2 + 1/(... + 1/n_F)),
 *
 * realized through the numerator tables q^(k)_a (numerator of the partial
 * quotient starting at level k) and their shifts p^(k)_a = q^(k)_{a-1}.
 * The derived radii r^(k) = p^(k)_F + q^(k)_F control every length scale
 * downstream: polygon size r = r^(1), rotation step r^(2), interval widths
 * r^(a), label counts p_a, and mutation shifts.
 *
 * Key design decisions.  Tables are stored 1-based in (k,a) and are immutable
 * after construction.  All entries are arbitrary-precision (GMP): the values
 * grow exponentially in F.  The extension p_{F+1} := q_F is provided because
 * the parity function theta and the deepest-generation shifts need p_{a+1}
 * at a = F; it is validated downstream by the occurrence test.
 */

#include <vector>

#include <gmpxx.h>

#include "ysys/errors.hpp"

namespace ysys {

/// Validated input sequence (n_1,...,n_F): n_1 >= 2, n_a >= 1, (2) excluded.
struct InputSequence {
    std::vector<int> n;
};

/// One line of the identity report produced by verify_cf_identities().
struct CheckEntry {
    std::string name;
    bool passed = false;
};

struct ReportOfChecks {
    std::vector<CheckEntry> entries;
    bool all_passed() const {
        for (const auto& e : entries)
            if (!e.passed) return false;
        return true;
    }
};

class ContinuedFractionTable {
  public:
    /// Builds all tables; throws RejectedInput on a malformed sequence.
    explicit ContinuedFractionTable(const InputSequence& seq);

    int F() const { return static_cast<int>(n_.size()); }
    const std::vector<int>& n() const { return n_; }
    int n(int a) const { return n_.at(a - 1); }

    /// p^(k)_a for 1 <= k <= a <= F+1 (a = F+1 is the extension p_{F+1}).
    const mpz_class& p(int k, int a) const;
    /// q^(k)_a for 1 <= k <= F, k-1 <= a <= F (q^(k)_{k-1} = 1).
    const mpz_class& q(int k, int a) const;
    /// r^(k) for 1 <= k <= F+2, with r^(F+1) = r^(F+2) = 1.
    const mpz_class& r(int k) const;

    /// First-row shortcuts p_a = p^(1)_a, q_a = q^(1)_a.
    const mpz_class& p(int a) const { return p(1, a); }
    const mpz_class& q(int a) const { return q(1, a); }

    /// Small-integer views (used for loop bounds; throws if out of long range).
    long p_l(int a) const;
    long r_l(int k) const;

    /// Sign attached to generation a: eps(a) = (-1)^(a-1).
    int eps(int a) const { return (a % 2 == 1) ? +1 : -1; }

    /// Largest p_a over 1 <= a <= F (used for default trajectory windows).
    long max_p() const;

  private:
    std::vector<int> n_;
    // q_[k-1][a-(k-1)] = q^(k)_a for a = k-1 .. F; p derived via p = q shifted.
    std::vector<std::vector<mpz_class>> q_;
    std::vector<mpz_class> r_;  // r_[k-1] = r^(k), k = 1..F+2
};

/// Validates and builds the table (RejectedInput on bad input).
ContinuedFractionTable build_table(const InputSequence& seq);

/// Checks every continued-fraction identity; entries all pass on a correct
/// build (a failure signals an implementation bug, not bad input).
ReportOfChecks verify_cf_identities(const ContinuedFractionTable& t);

/// Alternating sum A_F = sum_{a=1}^{F-1} (-1)^(a+1)/(p_a q_a)
///                      + (-1)^(F+1)/(p_F r); equals r^(2)/r exactly.
mpq_class alternating_sum(const ContinuedFractionTable& t);

}  // namespace ysys
