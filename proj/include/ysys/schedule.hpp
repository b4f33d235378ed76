#pragma once

/**
 * Reflection schedule and trajectory engine.
 *
 * A triangulation evolves in integer time u.  At each u a fixed set of
 * labels S(u) is flipped simultaneously, and the composite flip acts on the
 * triangulation exactly as the reflection across the axis Z(u) whose anchor
 * advances by r2 = r^(2) half-steps per unit of time.  Two consecutive time
 * steps therefore amount to a rigid rotation by r2 vertices combined with a
 * fixed relabeling nu that cycles the copy index s of every generation-a
 * label by a constant and, on punctured surfaces, swaps the two tagged
 * radii riding the central vertex.
 *
 * Key design decisions.  The schedule stores only the two base sets S(0)
 * and S(-1), both read off geometrically from the time-zero triangulation
 * (an arc is scheduled when it crosses the axis and is not its own mirror
 * image); every other S(u) is produced by powers of nu, and the engine
 * re-derives nothing from geometry while running.  Instead it *checks*
 * geometry every step: the flipped triangulation must equal the reflection
 * of its predecessor arc-for-arc, each flipped label must land exactly on
 * the mirror image of the arc it left, and any window of two steps must
 * satisfy the rotate-and-relabel law.  Any discrepancy aborts with the
 * failing time attached, so a passing run is itself a machine check of the
 * reflection description of the mutation dynamics.  Coefficient seeds ride
 * along through the same index order as the flips; occurrence values are
 * recorded from the seed state at the moment a label is flipped, keyed by
 * (a, m, u) only, because the copy index of the flipped label is determined
 * by u.  The trajectory keeps every intermediate triangulation (windows are
 * a few hundred steps; memory is modest) so that tests and renderers can
 * inspect any instant directly.
 */

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "ysys/contfrac.hpp"
#include "ysys/errors.hpp"
#include "ysys/geometry.hpp"
#include "ysys/seeds.hpp"

namespace ysys {

// ===========================================================================
// The relabeling nu
// ===========================================================================

/**
 * Apply k steps of the schedule relabeling to one label.
 *
 * Generation 1 labels are fixed, except that on punctured surfaces the two
 * tagged radii (m = -1 and m = -2) swap once per step; the central chord
 * (1,0) is always fixed.  A generation-a label (a >= 2) keeps (a, m) and
 * advances its copy index s by k times the constant shift p^(2)_a modulo
 * the copy count p_a.  Negative k undoes the relabeling.
 */
Label advance_label(const ContinuedFractionTable& t, bool punctured,
                    const Label& l, long k = 1);

// ===========================================================================
// Occurrence parity
// ===========================================================================

/**
 * Parity functional theta^(a)_m(u) = u + p_{a+1} - (n_a - m) p_a deciding
 * when the variable (a, m) sits at a forward mutation point.  The tagged
 * radii use u + 1 and the central chord uses u.  Uses p_{F+1} = q_F.
 */
long occurrence_parity(const ContinuedFractionTable& t, bool punctured,
                       int a, int m, long u);

/** True when (a, m) is flipped at time u (occurrence_parity even). */
bool occurs_at(const ContinuedFractionTable& t, bool punctured,
               int a, int m, long u);

// ===========================================================================
// MutationSchedule
// ===========================================================================

/**
 * The two geometric flip sets at times 0 and -1 plus everything needed to
 * transport them to any other time: the table (for the relabeling shifts
 * and the axis speed) and the punctured flag.
 */
struct MutationSchedule {
    const ContinuedFractionTable* table = nullptr;
    bool punctured = false;
    std::vector<Label> s_0;        ///< flip set at even times (base copy)
    std::vector<Label> s_minus1;   ///< flip set at odd times (base copy)

    /** Reflection axis in force at time u. */
    Axis axis_at(long u) const;

    /** S(u): the base set of matching parity pushed forward by nu. */
    std::vector<Label> labels_at(long u) const;
};

/**
 * Read the flip sets off the time-zero triangulation: a label is scheduled
 * at time u in {-1, 0} when its arc crosses Z(u) and is not symmetric
 * under it.  Checks that the two sets are disjoint, that together they
 * carry sum(n_a) - 2 labels (plain) or sum(n_a) + 1 labels (punctured),
 * and that each set is pairwise exchange-free (zero exchange-matrix
 * entries), i.e. flippable in one composite step.
 */
MutationSchedule derive_schedule(const LabeledTriangulation& g0,
                                 const ContinuedFractionTable& t,
                                 bool punctured);

// ===========================================================================
// Trajectory
// ===========================================================================

/// Occurrence key: generation a, index m, time u.  Copy index omitted.
using OccurrenceKey = std::tuple<int, int, long>;

/**
 * The full history of one run: every triangulation in the window
 * [u_lo, u_hi], the coefficient value recorded at each forward mutation
 * point, and the per-label list of flip times.
 */
template <class SF>
struct Trajectory {
    bool punctured = false;
    long u_lo = 0;
    long u_hi = 0;
    MutationSchedule schedule;
    std::vector<LabeledTriangulation> gammas;           ///< index u - u_lo
    std::map<OccurrenceKey, SF> occurrence_values;
    std::map<Label, std::vector<long>> mutation_times;  ///< ascending

    const LabeledTriangulation& gamma(long u) const {
        if (u < u_lo || u > u_hi)
            throw WindowTooSmall("gamma(u): time outside the run window");
        return gammas[static_cast<size_t>(u - u_lo)];
    }

    /** Value recorded when (a, m) was flipped at time u. */
    const SF& value_at(int a, int m, long u) const {
        auto it = occurrence_values.find(OccurrenceKey{a, m, u});
        if (it == occurrence_values.end()) {
            std::ostringstream os;
            os << "value_at: (" << a << "," << m << ") has no forward"
               << " mutation point at u=" << u;
            throw NotInPlusClass(os.str());
        }
        return it->second;
    }

    /**
     * Most recent flip time <= u for every label.  Throws WindowTooSmall
     * when some label has not yet been flipped inside [u_lo, u].
     */
    std::map<Label, long> snapshot(long u) const {
        if (u < u_lo || u > u_hi)
            throw WindowTooSmall("snapshot: time outside the run window");
        std::map<Label, long> out;
        for (const Label& lab : gamma(u_lo).labels()) {
            auto it = mutation_times.find(lab);
            bool found = false;
            if (it != mutation_times.end()) {
                const auto& ts = it->second;
                auto p = std::upper_bound(ts.begin(), ts.end(), u);
                if (p != ts.begin()) {
                    out[lab] = *std::prev(p);
                    found = true;
                }
            }
            if (!found) {
                throw WindowTooSmall("snapshot: label " + to_string(lab) +
                                     " has not been flipped by u=" +
                                     std::to_string(u) + " inside the window");
            }
        }
        return out;
    }

    /**
     * All (a, m, u) forward mutation points observed in [u_lo, u_hi).
     * Before returning, re-derives the same set from the occurrence
     * parity and throws OccurrenceMismatch on any difference.
     */
    std::set<OccurrenceKey> occurrences() const {
        std::set<OccurrenceKey> seen;
        for (const auto& [lab, ts] : mutation_times)
            for (long u : ts) seen.insert(OccurrenceKey{lab.a, lab.m, u});
        // Closed-form cross-check, one (a, m) stream at a time.
        std::set<std::pair<int, int>> ams;
        for (const Label& lab : gamma(u_lo).labels())
            ams.insert({lab.a, lab.m});
        const ContinuedFractionTable& t = *schedule.table;
        for (const auto& [a, m] : ams) {
            for (long u = u_lo; u < u_hi; ++u) {
                const bool want = occurs_at(t, punctured, a, m, u);
                const bool got = seen.count(OccurrenceKey{a, m, u}) != 0;
                if (want != got) {
                    std::ostringstream os;
                    os << "occurrences: (" << a << "," << m << ") at u=" << u
                       << (want ? " expected by parity but never flipped"
                                : " flipped but parity says it must not");
                    throw OccurrenceMismatch(os.str());
                }
            }
        }
        return seen;
    }
};

// ===========================================================================
// The engine
// ===========================================================================

namespace detail {

/** Throw unless every pair in the flip set has a zero exchange entry. */
inline void check_composite_free(const ExchangeMatrix& B,
                                 const std::vector<int>& idx, long u) {
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = i + 1; j < idx.size(); ++j)
            if (B.at(idx[i], idx[j]) != 0) {
                std::ostringstream os;
                os << "flip set at u=" << u << " contains an exchanging pair";
                throw CompatibilityFailure(os.str());
            }
}

/** Arc-for-arc reflection check for one time step (forward direction). */
inline void check_reflection_step(const LabeledTriangulation& before,
                                  const LabeledTriangulation& after,
                                  const Axis& ax, bool punctured,
                                  const std::vector<int>& flipped, long u) {
    if (!before.reflected(ax).same_arcs_unlabeled(after)) {
        std::ostringstream os;
        os << "step at u=" << u << " is not the reflection across Z(" << u
           << ")";
        throw ReflectionMismatch(os.str());
    }
    for (int k : flipped) {
        TaggedArc want = reflect_arc(before.arc(k), ax, punctured);
        // A flipped tagged radius re-enters on the opposite tag: the two
        // tagged streams trade places every time the pair is flipped,
        // which is the swap half of the schedule relabeling.
        if (want.kind == TaggedArc::Kind::radius) want.notched = !want.notched;
        if (!(after.arc(k) == want)) {
            std::ostringstream os;
            os << "flipped label index " << k << " at u=" << u
               << " did not land on its mirror arc";
            throw ReflectionMismatch(os.str());
        }
    }
}

}  // namespace detail

/**
 * Evolve the time-zero triangulation over [u_lo, u_hi] (u_lo <= 0 <= u_hi).
 * y0 holds one coefficient per label of g0, in label order.  Forward steps
 * record each flipped label's value at time u and then flip; backward
 * steps un-flip first and record at the earlier time, so that every
 * recorded value is the state at its own mutation time.  Every step is
 * checked against the reflection description, every two steps against the
 * rotate-and-relabel law, and the running exchange matrix against the one
 * read back from the triangulation.
 */
template <class SF>
Trajectory<SF> run(const LabeledTriangulation& g0,
                   const MutationSchedule& sched, std::vector<SF> y0,
                   long u_lo, long u_hi) {
    if (u_lo > 0 || u_hi < 0 || u_lo == u_hi)
        throw WindowTooSmall("run: window must contain time 0 properly");
    const ContinuedFractionTable& t = *sched.table;
    const long r2 = t.r_l(2);

    Trajectory<SF> tr;
    tr.punctured = sched.punctured;
    tr.u_lo = u_lo;
    tr.u_hi = u_hi;
    tr.schedule = sched;
    tr.gammas.assign(static_cast<size_t>(u_hi - u_lo + 1), g0);

    YSeed<SF> seed0;
    seed0.B = g0.exchange_matrix();
    if (static_cast<int>(y0.size()) != seed0.B.size())
        throw RejectedInput("run: one coefficient per label required");
    seed0.y = std::move(y0);

    auto indices_of = [](const LabeledTriangulation& g,
                         const std::vector<Label>& labs) {
        std::vector<int> idx;
        idx.reserve(labs.size());
        for (const Label& l : labs) idx.push_back(g.index_of(l));
        std::sort(idx.begin(), idx.end());
        return idx;
    };
    auto record = [&tr](const LabeledTriangulation& g, const YSeed<SF>& s,
                        const std::vector<int>& idx, long u) {
        for (int k : idx) {
            const Label lab = g.labels()[static_cast<size_t>(k)];
            auto [it, fresh] = tr.occurrence_values.emplace(
                OccurrenceKey{lab.a, lab.m, u}, s.y[static_cast<size_t>(k)]);
            if (!fresh) {
                std::ostringstream os;
                os << "two copies of (" << lab.a << "," << lab.m
                   << ") flipped at u=" << u;
                throw OccurrenceMismatch(os.str());
            }
            tr.mutation_times[lab].push_back(u);
        }
    };
    auto check_matrix = [](const LabeledTriangulation& g, const YSeed<SF>& s,
                           long u) {
        if (!(g.exchange_matrix() == s.B))
            throw DomainError("exchange matrix diverged from triangulation"
                              " at u=" + std::to_string(u));
    };

    // Forward sweep 0 -> u_hi.
    {
        LabeledTriangulation g = g0;
        YSeed<SF> s = seed0;
        for (long u = 0; u < u_hi; ++u) {
            const std::vector<int> idx = indices_of(g, sched.labels_at(u));
            detail::check_composite_free(s.B, idx, u);
            record(g, s, idx, u);
            const LabeledTriangulation before = g;
            for (int k : idx) {
                g.flip(k);
                s.mutate(k);
            }
            detail::check_reflection_step(before, g, sched.axis_at(u),
                                          sched.punctured, idx, u);
            check_matrix(g, s, u + 1);
            tr.gammas[static_cast<size_t>(u + 1 - u_lo)] = g;
        }
    }

    // Backward sweep 0 -> u_lo.
    {
        LabeledTriangulation g = g0;
        YSeed<SF> s = seed0;
        for (long u = 0; u > u_lo; --u) {
            const std::vector<int> idx = indices_of(g, sched.labels_at(u - 1));
            detail::check_composite_free(s.B, idx, u - 1);
            const LabeledTriangulation before = g;
            for (int k : idx) {
                g.flip(k);
                s.mutate(k);
            }
            record(g, s, idx, u - 1);
            detail::check_reflection_step(g, before, sched.axis_at(u - 1),
                                          sched.punctured, idx, u - 1);
            check_matrix(g, s, u - 1);
            tr.gammas[static_cast<size_t>(u - 1 - u_lo)] = g;
        }
    }

    for (auto& [lab, ts] : tr.mutation_times) std::sort(ts.begin(), ts.end());

    // Rotate-and-relabel law over every pair of consecutive steps.
    for (long u = u_lo; u + 2 <= u_hi; ++u) {
        LabeledTriangulation g = tr.gammas[static_cast<size_t>(u - u_lo)];
        const std::vector<Label> labs = g.labels();
        std::vector<int> perm(labs.size());
        for (size_t i = 0; i < labs.size(); ++i)
            perm[i] = g.index_of(advance_label(t, sched.punctured, labs[i]));
        g.relabel(perm);
        g = g.rotated(r2);
        if (!g.same_arcs_labeled(
                tr.gammas[static_cast<size_t>(u + 2 - u_lo)])) {
            std::ostringstream os;
            os << "rotate-and-relabel law fails between u=" << u << " and u="
               << (u + 2);
            throw RotationMismatch(os.str());
        }
    }
    return tr;
}

}  // namespace ysys
