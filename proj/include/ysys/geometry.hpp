#pragma once

/**
 * Polygon model for the two Y-system families.
 *
 * The plain family lives on an r-gon triangulated by r-3 labeled diagonals;
 * the tagged family lives on a once-punctured r-gon carrying r labeled arcs
 * (chords with a marked-point side, plus a plain/notched pair of radii).
 * This module builds the initial labeled triangulations from a continued
 * fraction table, exposes the flip (arc exchange) operation together with
 * the exchange matrix read off the triangle structure, and provides the
 * reflection / rotation symmetries and axis-crossing queries that drive the
 * mutation schedule.
 *
 * Key design decisions.  Boundary positions use "doubled" coordinates
 * (vertex v sits at 2v, the midpoint of edge (v,v+1) at 2v+1) so reflection
 * axes through vertices and edge midpoints are both integral.  Triangles
 * are stored as directed clockwise cycles: side i runs from corner i to
 * corner i+1, and a side walked w1 -> w2 has its triangle on the (w2..w1)
 * interval side.  That orientation is what lets one flip routine recover
 * both the new arc and its marked-point side without any geometry.  Chords
 * remember the marked-point side as the clockwise interval (from..to); in
 * the unpunctured model the pair is normalized to from < to and the side is
 * meaningless.  The self-folded pair is tracked separately (loop + inner
 * radius) because its flips follow the tagged rules rather than the
 * quadrilateral surgery.
 */

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ysys/contfrac.hpp"
#include "ysys/errors.hpp"
#include "ysys/seeds.hpp"

namespace ysys {

// ===========================================================================
// Labels
// ===========================================================================

/**
 * Node label (a, m)_s.  Generation a >= 1; m indexes the diagonal within a
 * copy; s is the 1-based copy index (always 1 in generation 1).  The two
 * radius labels of the tagged family are encoded in generation 1 as m = -2
 * (the initially plain radius) and m = -1 (the initially notched one); the
 * arc around the puncture is (1,0).
 */
struct Label {
    int a = 1;
    int m = 0;
    int s = 1;

    friend bool operator==(const Label&, const Label&) = default;
    friend bool operator<(const Label& x, const Label& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.m != y.m) return x.m < y.m;
        return x.s < y.s;
    }
};

std::string to_string(const Label& l);

// ===========================================================================
// Tagged arcs (the value-semantics view of one labeled arc)
// ===========================================================================

/**
 * A chord stores its endpoints together with the marked-point side as the
 * clockwise boundary interval (from..to).  A radius stores its boundary
 * base and tag.  Loops never appear here: the loop of a self-folded pair
 * is reported as the notched radius at its base, which is exactly the
 * tagged-arc dictionary.
 */
struct TaggedArc {
    enum class Kind { chord, radius };
    Kind kind = Kind::chord;
    long from = 0;   ///< chord only: marked-point side is cw (from..to)
    long to = 0;
    long base = 0;   ///< radius only
    bool notched = false;

    friend bool operator==(const TaggedArc&, const TaggedArc&) = default;
    friend bool operator<(const TaggedArc& x, const TaggedArc& y) {
        auto key = [](const TaggedArc& t) {
            return std::array<long, 5>{static_cast<long>(t.kind), t.from, t.to,
                                       t.base, t.notched ? 1L : 0L};
        };
        return key(x) < key(y);
    }
};

std::string to_string(const TaggedArc& t);

// ===========================================================================
// Reflection axes
// ===========================================================================

/**
 * Axis through the doubled boundary points anchor and anchor + r (mod 2r).
 * Reflection acts on doubled coordinates as x -> 2*anchor - x.
 */
struct Axis {
    long anchor = 0;
    long r = 0;
};

/** Axis used at schedule time u: anchor = u * r2 mod 2r. */
Axis axis_of_time(const ContinuedFractionTable& t, long u);

long reflect_doubled(const Axis& ax, long d);

/** Does the arc meet the axis transversally (once or twice)? */
bool arc_crosses(const TaggedArc& t, const Axis& ax, bool punctured);

TaggedArc reflect_arc(const TaggedArc& t, const Axis& ax, bool punctured);
TaggedArc rotate_arc(const TaggedArc& t, long steps, long r, bool punctured);

// ===========================================================================
// Interval subdivision
// ===========================================================================

/**
 * Half-open boundary interval [start, start+width) of the uniform
 * subdivision.  Level-a intervals have width r^(a); an interval remembers
 * whether it is a left- or right-anchored copy, which controls how it is
 * split further.  N-type children keep the handedness they will use when
 * they are split two levels down.
 */
struct Interval {
    long start = 0;
    long width = 0;
    enum class Type { L, R, NL, NR } type = Type::R;
    int level = 1;
    int s = 1;   ///< 1-based index among its level, by ascending start
};

/** The p_a level-a intervals (copies carrying generation-a diagonals). */
std::vector<Interval> level_intervals(const ContinuedFractionTable& t, int a);

/**
 * All children produced when the level-(a-1) intervals are split, in
 * ascending start order: n_{a-1} L/R children of width r^(a) plus one
 * N child of width r^(a+1) per parent.  Defined for 2 <= a <= F+1.
 */
std::vector<Interval> subdivision_children(const ContinuedFractionTable& t, int a);

/** Roles of the three distinguished doubled points w.r.t. one subdivision. */
enum class TrinityRole { n_midpoint, lr_midpoint, joint_midpoint };

struct TrinityReport {
    int level = 0;
    /** roles of doubled r (the nonzero axis point of Z(0)) and doubled
        2r - r2, r - r2 (the two axis points of Z(-1)), in that order. */
    std::array<TrinityRole, 3> roles{};
};

/**
 * Classify the three distinguished points against the stage-a boundary
 * partition (active level-a intervals plus the fresh N pieces cut from
 * level a-1); throws ClassificationFailure unless the three roles are hit
 * bijectively: one N-piece midpoint, one L/R midpoint, and one midpoint of
 * the union of an adjacent (L, N_R) or (N_L, R) pair.  Valid for
 * 2 <= a <= F+1.
 */
TrinityReport trinity_classify(const ContinuedFractionTable& t, int a);

// ===========================================================================
// Labeled triangulations
// ===========================================================================

/**
 * A triangulation of the (optionally punctured) r-gon whose arcs carry the
 * node labels.  Supports flips with full label bookkeeping, exchange-matrix
 * extraction, and the dihedral symmetries.  Copyable value type.
 */
class LabeledTriangulation {
public:
    static LabeledTriangulation build_rsg(const ContinuedFractionTable& t);
    static LabeledTriangulation build_sg(const ContinuedFractionTable& t);

    long r() const { return r_; }
    bool punctured() const { return punctured_; }
    int size() const { return static_cast<int>(labels_.size()); }
    const std::vector<Label>& labels() const { return labels_; }

    /** Index of a label; throws UnknownLabel. */
    int index_of(const Label& l) const;

    /** Current tagged arc of label k. */
    TaggedArc arc(int k) const;

    /** All arcs in label order. */
    std::vector<TaggedArc> arcs() const;

    /** Sorted arc multiset, for unlabeled comparison. */
    std::vector<TaggedArc> sorted_arcs() const;

    /**
     * The four boundary vertices of the quadrilateral surrounding the arc
     * of label k, in ascending cyclic order starting at a corner that is
     * not an endpoint of the arc: {corner, endpoint, corner, endpoint}.
     * Plain polygons only (no radii or loops border a puncture-free
     * quadrilateral); throws CompatibilityFailure on a punctured surface.
     */
    std::array<long, 4> quadrilateral(int k) const;

    /** Exchange matrix read off the triangle structure (labels order). */
    ExchangeMatrix exchange_matrix() const;

    /** Flip the arc carrying label k (label keeps riding the new arc). */
    void flip(int k);

    LabeledTriangulation reflected(const Axis& ax) const;
    LabeledTriangulation rotated(long steps) const;

    /** Reassign labels: new label perm[i] rides the arc of old label i. */
    void relabel(const std::vector<int>& perm);

    bool same_arcs_unlabeled(const LabeledTriangulation& o) const;
    bool same_arcs_labeled(const LabeledTriangulation& o) const;

    /**
     * Labels whose arc crosses the axis and is not fixed by it, in
     * ascending label order; these are the arcs the schedule flips at the
     * time whose axis this is.
     */
    std::vector<int> axis_mutable(const Axis& ax) const;

    /** Structural + pairwise-compatibility audit; throws on violation. */
    void validate() const;

private:
    struct IdealArc {
        enum class Kind { chord, radius, loop } kind = Kind::chord;
        long from = 0, to = 0;   ///< chord: marked-point side cw (from..to)
        long base = 0;           ///< radius / loop
        bool alive = true;
    };
    struct Corner {
        bool at_p = false;
        long v = 0;
        friend bool operator==(const Corner&, const Corner&) = default;
    };
    struct SideRef {
        int arc = -1;        ///< >= 0: arc index; -1: boundary edge
        long edge_from = 0;  ///< boundary edge (edge_from -> edge_from+1 cw)
        bool is_edge() const { return arc < 0; }
    };
    struct Face {
        bool self_folded = false;
        std::array<SideRef, 3> side{};    ///< cw cycle
        std::array<Corner, 3> corner{};   ///< corner i starts side i
        int loop_arc = -1, radius_arc = -1;   ///< self-folded only
    };

    long r_ = 0;
    bool punctured_ = false;
    std::vector<Label> labels_;
    std::vector<IdealArc> arcs_;      ///< append-only; dead slots stay
    std::vector<Face> faces_;         ///< compact; removal swaps from back
    std::vector<int> label_arc_;      ///< label index -> arc index
    std::vector<int> arc_label_;      ///< arc index -> label index (or -1)
    int pair_loop_ = -1;              ///< arc indices of the self-folded pair
    int pair_radius_ = -1;            ///< (-1 -1 when the radii form a fan)
    bool fan_tag_notched_ = false;    ///< common tag of fan radii

    bool in_pair_state() const { return pair_loop_ >= 0; }
    int new_arc(IdealArc a, int label);
    void kill_arc(int idx);
    void remove_face(int idx);
    std::array<int, 2> ordinary_faces_of(int arc) const;
    int self_folded_face() const;
    int rotate_face_arc_first(Face& f, int arc) const;
    void flip_generic(int k);
    void flip_pair_member(int k);
    void flip_fan_to_pair(int k);
    friend struct TriangulationBuilder;
};

/**
 * Every arc not flipped at this axis must reflect to an arc of the
 * triangulation, and every flipped arc's mirror image must be absent
 * (it is the arc the flip will produce).
 */
bool quasi_symmetric(const LabeledTriangulation& g, const Axis& ax);

}  // namespace ysys
