#include "ysys/geometry.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace ysys {

namespace {

long mod(long x, long m) { return ((x % m) + m) % m; }

/** Is doubled point p strictly inside the clockwise doubled arc (s..e)? */
bool inside_cw(long s, long e, long p, long two_r) {
    const long t = mod(p - s, two_r);
    const long len = mod(e - s, two_r);
    return t > 0 && t < len;
}

}  // namespace

// ===========================================================================
// Printing
// ===========================================================================

std::string to_string(const Label& l) {
    std::ostringstream os;
    os << "(" << l.a << "," << l.m << ")";
    if (l.a >= 2) os << "_" << l.s;
    return os.str();
}

std::string to_string(const TaggedArc& t) {
    std::ostringstream os;
    if (t.kind == TaggedArc::Kind::chord)
        os << "chord(" << t.from << "," << t.to << ")";
    else
        os << "radius(" << t.base << (t.notched ? ",notched" : ",plain") << ")";
    return os.str();
}

// ===========================================================================
// Axes
// ===========================================================================

Axis axis_of_time(const ContinuedFractionTable& t, long u) {
    const long r = t.r_l(1);
    return Axis{mod(u * t.r_l(2), 2 * r), r};
}

long reflect_doubled(const Axis& ax, long d) { return mod(2 * ax.anchor - d, 2 * ax.r); }

bool arc_crosses(const TaggedArc& t, const Axis& ax, bool punctured) {
    const long two_r = 2 * ax.r;
    const long A = mod(ax.anchor, two_r);
    const long B = mod(ax.anchor + ax.r, two_r);
    auto on_axis = [&](long d) { return d == A || d == B; };
    if (t.kind == TaggedArc::Kind::radius) return !on_axis(mod(2 * t.base, two_r));

    const long d1 = mod(2 * t.from, two_r);
    const long d2 = mod(2 * t.to, two_r);
    const bool on1 = on_axis(d1), on2 = on_axis(d2);
    if (on1 && on2) return false;
    const bool opposite = !on1 && !on2 &&
                          inside_cw(A, B, d1, two_r) != inside_cw(A, B, d2, two_r);
    if (!punctured) return opposite;
    if (opposite) return true;
    // One endpoint on the axis, or both in the same half: the arc meets the
    // axis (wrapping past the center) exactly when its marked-point side
    // keeps clear of both axis points.
    const bool pside_touches =
        inside_cw(d1, d2, A, two_r) || inside_cw(d1, d2, B, two_r);
    return !pside_touches;
}

TaggedArc reflect_arc(const TaggedArc& t, const Axis& ax, bool punctured) {
    const long two_r = 2 * ax.r;
    auto refv = [&](long v) { return mod(2 * ax.anchor - 2 * v, two_r) / 2; };
    TaggedArc out = t;
    if (t.kind == TaggedArc::Kind::radius) {
        out.base = refv(t.base);   // tag rides along unchanged
        return out;
    }
    // cw interval (from..to) reflects to cw interval (ref(to)..ref(from))
    out.from = refv(t.to);
    out.to = refv(t.from);
    if (!punctured && out.from > out.to) std::swap(out.from, out.to);
    return out;
}

TaggedArc rotate_arc(const TaggedArc& t, long steps, long r, bool punctured) {
    TaggedArc out = t;
    if (t.kind == TaggedArc::Kind::radius) {
        out.base = mod(t.base + steps, r);
        return out;
    }
    out.from = mod(t.from + steps, r);
    out.to = mod(t.to + steps, r);
    if (!punctured && out.from > out.to) std::swap(out.from, out.to);
    return out;
}

// ===========================================================================
// Interval subdivision
// ===========================================================================

namespace {

bool left_handed(Interval::Type t) {
    return t == Interval::Type::L || t == Interval::Type::NL;
}

/**
 * Split one width-r^(a) interval by n_a.  Children are returned in
 * clockwise (ascending start) order: the L/R children have width r^(a+1)
 * and the single N child width r^(a+2); the N child remembers the
 * handedness it will split with two levels down.
 */
std::vector<Interval> split_one(const ContinuedFractionTable& t, const Interval& iv, int a) {
    const int n = t.n(a);
    const long cw = t.r_l(a + 1);
    const long nw = t.r_l(a + 2);
    const bool L = left_handed(iv.type);
    int lcount, rcount;
    Interval::Type ntype;
    if (n % 2 == 0) {
        lcount = rcount = n / 2;
        ntype = L ? Interval::Type::NL : Interval::Type::NR;
    } else if (L) {
        lcount = (n + 1) / 2;
        rcount = (n - 1) / 2;
        ntype = Interval::Type::NR;
    } else {
        lcount = (n - 1) / 2;
        rcount = (n + 1) / 2;
        ntype = Interval::Type::NL;
    }
    std::vector<Interval> out;
    long pos = iv.start;
    for (int i = 0; i < lcount; ++i) {
        out.push_back(Interval{pos, cw, Interval::Type::L, iv.level + 1, 0});
        pos += cw;
    }
    out.push_back(Interval{pos, nw, ntype, iv.level + 2, 0});
    pos += nw;
    for (int i = 0; i < rcount; ++i) {
        out.push_back(Interval{pos, cw, Interval::Type::R, iv.level + 1, 0});
        pos += cw;
    }
    if (pos != iv.start + iv.width)
        throw ClassificationFailure("interval split widths do not tile the parent");
    return out;
}

/** levels[a] for a = 1..F+1: the level-a intervals in s order. */
std::vector<std::vector<Interval>> all_levels(const ContinuedFractionTable& t) {
    const int F = t.F();
    std::vector<std::vector<Interval>> lv(F + 2);
    std::vector<std::vector<Interval>> pending(F + 4);
    lv[1] = {Interval{0, t.r_l(1), Interval::Type::R, 1, 1}};
    for (int a = 1; a <= F; ++a) {
        std::vector<Interval> next = pending[a + 1];
        for (const Interval& iv : lv[a]) {
            for (Interval& ch : split_one(t, iv, a)) {
                if (ch.level == a + 1)
                    next.push_back(ch);
                else
                    pending[a + 2].push_back(ch);
            }
        }
        std::sort(next.begin(), next.end(),
                  [](const Interval& x, const Interval& y) { return x.start < y.start; });
        for (size_t i = 0; i < next.size(); ++i) next[i].s = static_cast<int>(i) + 1;
        lv[a + 1] = std::move(next);
    }
    return lv;
}

}  // namespace

std::vector<Interval> level_intervals(const ContinuedFractionTable& t, int a) {
    if (a < 1 || a > t.F() + 1)
        throw UnknownLabel("level_intervals: generation out of range");
    return all_levels(t)[a];
}

std::vector<Interval> subdivision_children(const ContinuedFractionTable& t, int a) {
    if (a < 2 || a > t.F() + 1)
        throw UnknownLabel("subdivision_children: generation out of range");
    std::vector<Interval> out;
    for (const Interval& iv : level_intervals(t, a - 1))
        for (Interval& ch : split_one(t, iv, a - 1)) out.push_back(ch);
    std::sort(out.begin(), out.end(),
              [](const Interval& x, const Interval& y) { return x.start < y.start; });
    return out;
}

TrinityReport trinity_classify(const ContinuedFractionTable& t, int a) {
    if (a < 2 || a > t.F() + 1)
        throw UnknownLabel("trinity_classify: generation out of range");
    const long r = t.r_l(1);
    const long r2 = t.r_l(2);
    const long two_r = 2 * r;
    const auto lv = all_levels(t);

    // Stage-a partition of the boundary: the active level-a intervals (an
    // N child that reached its level counts as plain L/R from then on) plus
    // the fresh N children cut out of the level-(a-1) intervals.
    struct Piece {
        long start = 0, width = 0;
        bool is_n = false, left = false;
    };
    std::vector<Piece> parts;
    for (const Interval& iv : lv[a])
        parts.push_back({iv.start, iv.width, false, left_handed(iv.type)});
    for (const Interval& iv : lv[a - 1])
        for (const Interval& c : split_one(t, iv, a - 1))
            if (c.level == a + 1)
                parts.push_back({c.start, c.width, true, left_handed(c.type)});
    std::sort(parts.begin(), parts.end(),
              [](const Piece& x, const Piece& y) { return x.start < y.start; });

    auto classify = [&](long d) -> TrinityRole {
        int hits = 0;
        TrinityRole role = TrinityRole::n_midpoint;
        for (const Piece& p : parts) {
            if (mod(2 * p.start + p.width, two_r) != d) continue;
            role = p.is_n ? TrinityRole::n_midpoint : TrinityRole::lr_midpoint;
            ++hits;
        }
        for (size_t i = 0; i < parts.size(); ++i) {
            const Piece& x = parts[i];
            const Piece& y = parts[(i + 1) % parts.size()];
            const bool joint = (!x.is_n && x.left && y.is_n && !y.left) ||   // (L, N_R)
                               (x.is_n && x.left && !y.is_n && !y.left);     // (N_L, R)
            if (!joint) continue;
            if (mod(2 * x.start + x.width + y.width, two_r) != d) continue;
            role = TrinityRole::joint_midpoint;
            ++hits;
        }
        if (hits != 1)
            throw ClassificationFailure("distinguished point fits " + std::to_string(hits) +
                                        " subdivision roles at stage " + std::to_string(a));
        return role;
    };

    TrinityReport rep;
    rep.level = a;
    rep.roles = {classify(mod(r, two_r)), classify(mod(-r2, two_r)),
                 classify(mod(r - r2, two_r))};
    if (rep.roles[0] == rep.roles[1] || rep.roles[0] == rep.roles[2] ||
        rep.roles[1] == rep.roles[2])
        throw ClassificationFailure("distinguished points do not hit the three roles "
                                    "bijectively at stage " + std::to_string(a));
    return rep;
}

// ===========================================================================
// Triangulation construction
// ===========================================================================

namespace {

/** Boundaries b_0..b_{n+1} of one interval's subdivision. */
std::vector<long> split_boundaries(const ContinuedFractionTable& t, const Interval& iv, int a) {
    std::vector<long> b{iv.start};
    for (const Interval& ch : split_one(t, iv, a)) b.push_back(ch.start + ch.width);
    return b;
}

/**
 * Diagonal idx (1-based) of the standard pattern on boundaries b_0..b_N.
 * idx 1 spans the whole interval; odd idx 2j+1 gives (b_j, b_{N-j}); even
 * idx 2j gives (b_j, b_{N-j+1}) in a left-handed copy and (b_{j-1}, b_{N-j})
 * in a right-handed one.
 */
std::pair<long, long> pattern_chord(const std::vector<long>& b, int idx, bool left) {
    const int N = static_cast<int>(b.size()) - 1;
    if (idx == 1) return {b[0], b[N]};
    if (idx % 2 == 1) {
        const int j = idx / 2;
        return {b[j], b[N - j]};
    }
    const int j = idx / 2;
    return left ? std::pair<long, long>{b[j], b[N - j + 1]}
                : std::pair<long, long>{b[j - 1], b[N - j]};
}

struct ChordSet {
    std::vector<Label> labels;
    std::vector<std::pair<long, long>> ends;   // canonical (min,max), label order
};

ChordSet build_chord_set(const ContinuedFractionTable& t) {
    const long r = t.r_l(1);
    const auto lv = all_levels(t);
    ChordSet cs;
    auto push = [&](Label l, long x, long y) {
        x = mod(x, r);
        y = mod(y, r);
        if (x > y) std::swap(x, y);
        cs.labels.push_back(l);
        cs.ends.emplace_back(x, y);
    };
    // generation 1: pattern indices 3..n1 on the root subdivision
    const std::vector<long> rootb = split_boundaries(t, lv[1][0], 1);
    for (int m = 1; m <= t.n(1) - 2; ++m) {
        auto [x, y] = pattern_chord(rootb, m + 2, false);
        push(Label{1, m, 1}, x, y);
    }
    // generations 2..F: pattern indices 1..n_a on each copy
    for (int a = 2; a <= t.F(); ++a) {
        std::vector<std::vector<long>> bounds;
        for (const Interval& iv : lv[a]) bounds.push_back(split_boundaries(t, iv, a));
        for (int m = 1; m <= t.n(a); ++m)
            for (size_t s = 0; s < lv[a].size(); ++s) {
                auto [x, y] = pattern_chord(bounds[s], m, left_handed(lv[a][s].type));
                push(Label{a, m, static_cast<int>(s) + 1}, x, y);
            }
    }
    return cs;
}

/** Faces of a triangulated convex r-gon as clockwise-ascending cyclic triples. */
std::vector<std::array<long, 3>> polygon_faces(long r,
                                               const std::set<std::pair<long, long>>& chords) {
    std::vector<std::array<long, 3>> out;
    auto has = [&](long x, long y) {
        if (x > y) std::swap(x, y);
        return mod(y - x, r) == 1 || mod(x - y, r) == 1 || chords.count({x, y}) > 0;
    };
    std::function<void(std::vector<long>&)> rec = [&](std::vector<long>& R) {
        const size_t k = R.size();
        if (k == 3) {
            out.push_back({R[0], R[1], R[2]});
            return;
        }
        for (size_t j = 2; j + 1 < k; ++j) {
            long x = R[0], y = R[j];
            if (x > y) std::swap(x, y);
            if (chords.count({x, y})) {
                std::vector<long> r1(R.begin(), R.begin() + j + 1);
                std::vector<long> r2(R.begin() + j, R.end());
                r2.push_back(R[0]);
                rec(r1);
                rec(r2);
                return;
            }
        }
        if (!has(R[1], R[k - 1]))
            throw ClassificationFailure("polygon face extraction: region has no splitting "
                                        "diagonal and no ear");
        out.push_back({R[0], R[1], R[k - 1]});
        std::vector<long> rest(R.begin() + 1, R.end());
        rec(rest);
    };
    std::vector<long> all(r);
    for (long v = 0; v < r; ++v) all[v] = v;
    rec(all);
    return out;
}

}  // namespace

struct TriangulationBuilder {
    using LT = LabeledTriangulation;
    using IdealArc = LT::IdealArc;
    using Corner = LT::Corner;
    using SideRef = LT::SideRef;
    using Face = LT::Face;

    static LT build(const ContinuedFractionTable& t, bool punctured) {
        LT g;
        g.r_ = t.r_l(1);
        g.punctured_ = punctured;
        const long r = g.r_;
        const long r2 = t.r_l(2);

        ChordSet cs = build_chord_set(t);
        std::map<std::pair<long, long>, int> chord_arc;
        for (size_t i = 0; i < cs.labels.size(); ++i) {
            IdealArc a;
            a.kind = IdealArc::Kind::chord;
            a.from = cs.ends[i].first;
            a.to = cs.ends[i].second;
            g.arcs_.push_back(a);
            chord_arc[cs.ends[i]] = static_cast<int>(i);
        }

        // labels: chords now; the three extra tagged labels are spliced in below
        std::vector<int> chord_label_arc(cs.labels.size());
        for (size_t i = 0; i < cs.labels.size(); ++i) chord_label_arc[i] = static_cast<int>(i);

        // faces
        std::set<std::pair<long, long>> cset(cs.ends.begin(), cs.ends.end());
        for (const auto& tri : polygon_faces(r, cset)) {
            Face f;
            for (int i = 0; i < 3; ++i) {
                const long x = tri[i], y = tri[(i + 1) % 3];
                f.corner[i] = Corner{false, x};
                if (mod(y - x, r) == 1) {
                    f.side[i] = SideRef{-1, x};
                } else {
                    long a = x, b = y;
                    if (a > b) std::swap(a, b);
                    auto it = chord_arc.find({a, b});
                    if (it == chord_arc.end())
                        throw ClassificationFailure("face side is neither edge nor diagonal");
                    f.side[i] = SideRef{it->second, 0};
                }
            }
            g.faces_.push_back(f);
        }

        if (!punctured) {
            g.labels_ = cs.labels;
            g.label_arc_ = chord_label_arc;
            g.arc_label_.assign(g.arcs_.size(), -1);
            for (size_t i = 0; i < g.label_arc_.size(); ++i)
                g.arc_label_[g.label_arc_[i]] = static_cast<int>(i);
            return g;
        }

        // --- tagged construction -------------------------------------------
        // Host triangle: the face on the vertex-rich side of the chord
        // (0, r - r2) when generations beyond the first exist, else the face
        // at the boundary edge (r-1, 0).
        int host = -1;
        int xarc = -1;
        if (t.F() >= 2) {
            auto it = chord_arc.find({0, r - r2});
            if (it == chord_arc.end())
                throw ClassificationFailure("expected chord (0, r - r2) is absent");
            xarc = it->second;
            for (size_t fi = 0; fi < g.faces_.size(); ++fi) {
                const Face& f = g.faces_[fi];
                for (int i = 0; i < 3; ++i) {
                    if (f.side[i].arc != xarc) continue;
                    const long third = f.corner[(i + 2) % 3].v;
                    if (inside_cw(0, 2 * (r - r2), 2 * third, 2 * r))
                        host = static_cast<int>(fi);
                }
            }
        } else {
            for (size_t fi = 0; fi < g.faces_.size(); ++fi)
                for (int i = 0; i < 3; ++i)
                    if (g.faces_[fi].side[i].is_edge() &&
                        g.faces_[fi].side[i].edge_from == r - 1)
                        host = static_cast<int>(fi);
        }
        if (host < 0) throw ClassificationFailure("host triangle not found");

        // Marked-point sides: BFS over the dual tree from the host; each
        // chord faces the marked point on its host-facing side.
        assign_psides(g, host);

        // Labels with the three tagged ones spliced before (1,1).
        g.labels_.clear();
        g.labels_.push_back(Label{1, -2, 1});
        g.labels_.push_back(Label{1, -1, 1});
        g.labels_.push_back(Label{1, 0, 1});
        for (const Label& l : cs.labels) g.labels_.push_back(l);
        std::sort(g.labels_.begin(), g.labels_.end());

        IdealArc rho;
        rho.kind = IdealArc::Kind::radius;
        rho.base = 0;
        IdealArc ell;
        ell.kind = IdealArc::Kind::loop;
        ell.base = 0;
        IdealArc noose;
        noose.kind = IdealArc::Kind::chord;
        noose.from = r - r2;   // marked-point side is the short interval (r-r2..0)
        noose.to = 0;
        const int rho_i = static_cast<int>(g.arcs_.size());
        g.arcs_.push_back(rho);
        const int ell_i = static_cast<int>(g.arcs_.size());
        g.arcs_.push_back(ell);
        const int noose_i = static_cast<int>(g.arcs_.size());
        g.arcs_.push_back(noose);

        g.label_arc_.assign(g.labels_.size(), -1);
        g.arc_label_.assign(g.arcs_.size(), -1);
        for (size_t i = 0; i < g.labels_.size(); ++i) {
            const Label& l = g.labels_[i];
            int ai;
            if (l.a == 1 && l.m == -2)
                ai = rho_i;
            else if (l.a == 1 && l.m == -1)
                ai = ell_i;
            else if (l.a == 1 && l.m == 0)
                ai = noose_i;
            else {
                auto pos = std::lower_bound(cs.labels.begin(), cs.labels.end(), l);
                ai = chord_label_arc[static_cast<size_t>(pos - cs.labels.begin())];
            }
            g.label_arc_[i] = ai;
            g.arc_label_[ai] = static_cast<int>(i);
        }
        g.pair_loop_ = ell_i;
        g.pair_radius_ = rho_i;

        // Surgery on the host triangle: rotate it so its (r-r2 -> 0) side
        // comes first, then replace it with the upper triangle (that side
        // swapped for the puncture arc), the collar and the self-folded pair.
        Face T = g.faces_[host];
        int xi = -1;
        for (int i = 0; i < 3; ++i) {
            const bool match = (t.F() >= 2) ? (T.side[i].arc == xarc)
                                            : (T.side[i].is_edge() &&
                                               T.side[i].edge_from == r - 1);
            if (match) xi = i;
        }
        std::rotate(T.side.begin(), T.side.begin() + xi, T.side.end());
        std::rotate(T.corner.begin(), T.corner.begin() + xi, T.corner.end());
        if (T.corner[0].v != r - r2 || T.corner[1].v != 0)
            throw ClassificationFailure("host triangle is not walked (r-r2 -> 0)");

        g.remove_face(host);
        Face upper = T;
        upper.side[0] = SideRef{noose_i, 0};
        g.faces_.push_back(upper);
        Face collar;
        collar.side = {SideRef{ell_i, 0}, SideRef{noose_i, 0}, T.side[0]};
        collar.corner = {Corner{false, 0}, Corner{false, 0}, Corner{false, r - r2}};
        g.faces_.push_back(collar);
        Face sf;
        sf.self_folded = true;
        sf.loop_arc = ell_i;
        sf.radius_arc = rho_i;
        sf.side = {SideRef{ell_i, 0}, SideRef{rho_i, 0}, SideRef{rho_i, 0}};
        sf.corner = {Corner{false, 0}, Corner{false, 0}, Corner{true, 0}};
        g.faces_.push_back(sf);
        return g;
    }

    /** Orient every chord's stored interval toward the marked-point side. */
    static void assign_psides(LT& g, int host) {
        std::vector<std::vector<std::pair<int, int>>> arc_faces(g.arcs_.size());
        for (size_t fi = 0; fi < g.faces_.size(); ++fi)
            for (int i = 0; i < 3; ++i)
                if (!g.faces_[fi].side[i].is_edge())
                    arc_faces[g.faces_[fi].side[i].arc].emplace_back(static_cast<int>(fi), i);
        std::vector<char> seen(g.faces_.size(), 0);
        std::vector<int> queue{host};
        seen[host] = 1;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            const int fi = queue[qi];
            for (int i = 0; i < 3; ++i) {
                const SideRef& s = g.faces_[fi].side[i];
                if (s.is_edge()) continue;
                // fi is the marked-point-facing face of this chord unless the
                // chord was already settled from closer to the host
                IdealArc& a = g.arcs_[s.arc];
                const long w1 = g.faces_[fi].corner[i].v;
                const long w2 = g.faces_[fi].corner[(i + 1) % 3].v;
                for (const auto& pr : arc_faces[s.arc]) {
                    const int of = pr.first;
                    if (of == fi || seen[of]) continue;
                    // face fi is nearer the host: its side is the marked side
                    a.from = w2;
                    a.to = w1;
                    seen[of] = 1;
                    queue.push_back(of);
                }
            }
        }
        if (queue.size() != g.faces_.size())
            throw ClassificationFailure("dual tree of the triangulation is disconnected");
    }
};

LabeledTriangulation LabeledTriangulation::build_rsg(const ContinuedFractionTable& t) {
    return TriangulationBuilder::build(t, false);
}

LabeledTriangulation LabeledTriangulation::build_sg(const ContinuedFractionTable& t) {
    return TriangulationBuilder::build(t, true);
}

// ===========================================================================
// Accessors
// ===========================================================================

int LabeledTriangulation::index_of(const Label& l) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
    if (it == labels_.end() || !(*it == l))
        throw UnknownLabel("no arc carries label " + to_string(l));
    return static_cast<int>(it - labels_.begin());
}

TaggedArc LabeledTriangulation::arc(int k) const {
    if (k < 0 || k >= size()) throw UnknownLabel("arc: label index out of range");
    const IdealArc& a = arcs_[label_arc_[k]];
    TaggedArc t;
    switch (a.kind) {
        case IdealArc::Kind::chord:
            t.kind = TaggedArc::Kind::chord;
            t.from = a.from;
            t.to = a.to;
            break;
        case IdealArc::Kind::loop:
            t.kind = TaggedArc::Kind::radius;
            t.base = a.base;
            t.notched = true;
            break;
        case IdealArc::Kind::radius:
            t.kind = TaggedArc::Kind::radius;
            t.base = a.base;
            t.notched = in_pair_state() ? false : fan_tag_notched_;
            break;
    }
    return t;
}

std::vector<TaggedArc> LabeledTriangulation::arcs() const {
    std::vector<TaggedArc> out;
    out.reserve(labels_.size());
    for (int k = 0; k < size(); ++k) out.push_back(arc(k));
    return out;
}

std::vector<TaggedArc> LabeledTriangulation::sorted_arcs() const {
    std::vector<TaggedArc> out = arcs();
    std::sort(out.begin(), out.end());
    return out;
}

ExchangeMatrix LabeledTriangulation::exchange_matrix() const {
    ExchangeMatrix B(size());
    for (const Face& f : faces_) {
        if (f.self_folded) continue;
        std::array<std::vector<int>, 3> labs;
        for (int i = 0; i < 3; ++i) {
            const SideRef& s = f.side[i];
            if (s.is_edge()) continue;
            const IdealArc& a = arcs_[s.arc];
            if (a.kind == IdealArc::Kind::loop) {
                labs[i].push_back(arc_label_[pair_loop_]);
                labs[i].push_back(arc_label_[pair_radius_]);
            } else {
                labs[i].push_back(arc_label_[s.arc]);
            }
        }
        for (int i = 0; i < 3; ++i)
            for (int x : labs[i])
                for (int y : labs[(i + 1) % 3]) B.add_skew(x, y, 1);
    }
    return B;
}

// ===========================================================================
// Flips
// ===========================================================================

int LabeledTriangulation::new_arc(IdealArc a, int label) {
    const int idx = static_cast<int>(arcs_.size());
    arcs_.push_back(a);
    arc_label_.push_back(label);
    if (label >= 0) label_arc_[label] = idx;
    return idx;
}

void LabeledTriangulation::kill_arc(int idx) {
    arcs_[idx].alive = false;
    arc_label_[idx] = -1;
}

void LabeledTriangulation::remove_face(int idx) {
    faces_[idx] = faces_.back();
    faces_.pop_back();
}

std::array<long, 4> LabeledTriangulation::quadrilateral(int k) const {
    if (punctured_)
        throw CompatibilityFailure(
            "quadrilateral: corners are boundary vertices only on the plain polygon");
    if (k < 0 || k >= size()) throw UnknownLabel("quadrilateral: label index out of range");
    const int ai = label_arc_[k];
    const auto ff = ordinary_faces_of(ai);
    Face f1 = faces_[ff[0]], f2 = faces_[ff[1]];
    rotate_face_arc_first(f1, ai);
    rotate_face_arc_first(f2, ai);
    if (!(f2.corner[0] == f1.corner[1] && f2.corner[1] == f1.corner[0]))
        throw ClassificationFailure(
            "quadrilateral: the two triangles disagree on the shared side");
    const long d1 = f1.corner[0].v, d2 = f1.corner[1].v;
    std::array<long, 4> s{d1, d2, f1.corner[2].v, f2.corner[2].v};
    std::sort(s.begin(), s.end());
    const auto on_diagonal = [&](long v) { return v == d1 || v == d2; };
    std::array<long, 4> out{};
    const int start = on_diagonal(s[0]) ? 1 : 0;
    for (int i = 0; i < 4; ++i) out[i] = s[(start + i) % 4];
    for (int i = 0; i < 4; ++i)
        if (on_diagonal(out[i]) != (i % 2 == 1))
            throw ClassificationFailure(
                "quadrilateral: arc endpoints do not alternate with the off corners");
    return out;
}

std::array<int, 2> LabeledTriangulation::ordinary_faces_of(int arc) const {
    std::array<int, 2> out{-1, -1};
    int cnt = 0;
    for (size_t fi = 0; fi < faces_.size(); ++fi) {
        if (faces_[fi].self_folded) continue;
        for (int i = 0; i < 3; ++i)
            if (faces_[fi].side[i].arc == arc) {
                if (cnt < 2) out[cnt] = static_cast<int>(fi);
                ++cnt;
                break;
            }
    }
    if (cnt != 2)
        throw ClassificationFailure("arc borders " + std::to_string(cnt) +
                                    " ordinary triangles, expected 2");
    return out;
}

int LabeledTriangulation::self_folded_face() const {
    for (size_t fi = 0; fi < faces_.size(); ++fi)
        if (faces_[fi].self_folded) return static_cast<int>(fi);
    throw ClassificationFailure("self-folded triangle is absent");
}

int LabeledTriangulation::rotate_face_arc_first(Face& f, int arc) const {
    for (int i = 0; i < 3; ++i) {
        if (f.side[0].arc == arc) return i;
        std::rotate(f.side.begin(), f.side.begin() + 1, f.side.end());
        std::rotate(f.corner.begin(), f.corner.begin() + 1, f.corner.end());
    }
    throw ClassificationFailure("arc not found in its own face");
}

void LabeledTriangulation::flip(int k) {
    if (k < 0 || k >= size()) throw UnknownLabel("flip: label index out of range");
    const int ai = label_arc_[k];
    const IdealArc& a = arcs_[ai];
    if (a.kind == IdealArc::Kind::loop ||
        (in_pair_state() && ai == pair_radius_)) {
        flip_pair_member(k);
        return;
    }
    if (a.kind == IdealArc::Kind::radius) {
        int radii = 0;
        for (const IdealArc& x : arcs_)
            if (x.alive && x.kind == IdealArc::Kind::radius) ++radii;
        if (radii == 2) {
            flip_fan_to_pair(k);
            return;
        }
    }
    flip_generic(k);
}

void LabeledTriangulation::flip_generic(int k) {
    const int ai = label_arc_[k];
    const auto ff = ordinary_faces_of(ai);
    Face f1 = faces_[ff[0]], f2 = faces_[ff[1]];
    rotate_face_arc_first(f1, ai);
    rotate_face_arc_first(f2, ai);
    const Corner u0 = f1.corner[0], u1 = f1.corner[1], u2 = f1.corner[2];
    const Corner v2 = f2.corner[2];
    if (!(f2.corner[0] == u1 && f2.corner[1] == u0))
        throw ClassificationFailure("flip: the two triangles disagree on the shared side");
    const SideRef sa = f1.side[1], sb = f1.side[2];
    const SideRef sc = f2.side[1], sd = f2.side[2];

    IdealArc na;
    if (u2.at_p || v2.at_p) {
        if (u2.at_p && v2.at_p)
            throw ClassificationFailure("flip would join the marked point to itself");
        na.kind = IdealArc::Kind::radius;
        na.base = u2.at_p ? v2.v : u2.v;
    } else {
        na.kind = IdealArc::Kind::chord;
        if (u1.at_p) {         // marked point at the shared corner seen by face 2
            na.from = v2.v;
            na.to = u2.v;
        } else if (u0.at_p) {  // marked point at the shared corner seen by face 1
            na.from = u2.v;
            na.to = v2.v;
        } else if (!punctured_) {
            na.from = std::min(u2.v, v2.v);
            na.to = std::max(u2.v, v2.v);
        } else {
            // locate the side beyond which the marked point sits
            auto carries = [&](const SideRef& s, const Corner& w1, const Corner& w2) {
                if (s.is_edge() || w1.at_p || w2.at_p) return false;
                const IdealArc& x = arcs_[s.arc];
                if (x.kind == IdealArc::Kind::loop) return true;
                return x.from == w1.v && x.to == w2.v;
            };
            int carriers = 0;
            bool in_first = false;
            if (carries(sb, u2, u0)) { in_first = true; ++carriers; }
            if (carries(sc, u0, v2)) { in_first = true; ++carriers; }
            if (carries(sd, v2, u1)) ++carriers;
            if (carries(sa, u1, u2)) ++carriers;
            if (carriers != 1)
                throw ClassificationFailure("flip: marked point located beyond " +
                                            std::to_string(carriers) + " sides");
            if (in_first) {    // new face 1 is the marked-point side
                na.from = u2.v;
                na.to = v2.v;
            } else {
                na.from = v2.v;
                na.to = u2.v;
            }
        }
    }

    kill_arc(ai);
    const int ni = new_arc(na, k);
    Face nf1;
    nf1.side = {SideRef{ni, 0}, sb, sc};
    nf1.corner = {v2, u2, u0};
    Face nf2;
    nf2.side = {SideRef{ni, 0}, sd, sa};
    nf2.corner = {u2, v2, u1};
    // remove the higher index first so the swap does not move the other
    const int hi = std::max(ff[0], ff[1]), lo = std::min(ff[0], ff[1]);
    remove_face(hi);
    remove_face(lo);
    faces_.push_back(nf1);
    faces_.push_back(nf2);
}

void LabeledTriangulation::flip_pair_member(int k) {
    const int ell = pair_loop_, rho = pair_radius_;
    const long v = arcs_[ell].base;
    const int rode = label_arc_[k];
    if (rode != ell && rode != rho)
        throw ClassificationFailure("pair flip requested for a non-pair label");
    const int other_label = arc_label_[rode == ell ? rho : ell];

    int outer = -1;
    for (size_t fi = 0; fi < faces_.size(); ++fi) {
        if (faces_[fi].self_folded) continue;
        for (int i = 0; i < 3; ++i)
            if (faces_[fi].side[i].arc == ell) outer = static_cast<int>(fi);
    }
    if (outer < 0) throw ClassificationFailure("loop has no ordinary triangle");
    Face O = faces_[outer];
    rotate_face_arc_first(O, ell);
    if (!(O.corner[0] == Corner{false, v} && O.corner[1] == Corner{false, v}))
        throw ClassificationFailure("loop triangle corners are inconsistent");
    const Corner apex = O.corner[2];
    if (apex.at_p) throw ClassificationFailure("loop triangle apex at the marked point");
    const long w = apex.v;
    const SideRef x = O.side[1], y = O.side[2];

    const int sf = self_folded_face();
    kill_arc(ell);
    IdealArc nr;
    nr.kind = IdealArc::Kind::radius;
    nr.base = w;
    const int nri = new_arc(nr, k);
    label_arc_[other_label] = rho;
    arc_label_[rho] = other_label;

    const int hi = std::max(outer, sf), lo = std::min(outer, sf);
    remove_face(hi);
    remove_face(lo);
    Face fa;
    fa.side = {x, SideRef{nri, 0}, SideRef{rho, 0}};
    fa.corner = {Corner{false, v}, Corner{false, w}, Corner{true, 0}};
    Face fb;
    fb.side = {y, SideRef{rho, 0}, SideRef{nri, 0}};
    fb.corner = {Corner{false, w}, Corner{false, v}, Corner{true, 0}};
    faces_.push_back(fa);
    faces_.push_back(fb);

    fan_tag_notched_ = (rode == rho);   // the surviving tag is the other label's
    pair_loop_ = pair_radius_ = -1;
}

void LabeledTriangulation::flip_fan_to_pair(int k) {
    const int rv = label_arc_[k];
    const long v = arcs_[rv].base;
    int rw = -1;
    for (size_t i = 0; i < arcs_.size(); ++i)
        if (arcs_[i].alive && arcs_[i].kind == IdealArc::Kind::radius &&
            static_cast<int>(i) != rv)
            rw = static_cast<int>(i);
    if (rw < 0) throw ClassificationFailure("two-radius flip: partner radius missing");
    const long w = arcs_[rw].base;

    const auto ff = ordinary_faces_of(rv);
    Face fa = faces_[ff[0]], fb = faces_[ff[1]];
    rotate_face_arc_first(fa, rv);
    rotate_face_arc_first(fb, rv);
    // fa should read [rho_v, x, rho_w] (corners P, v, w); fb the mirror
    if (fa.side[1].arc == rw) std::swap(fa, fb);
    if (!(fa.side[2].arc == rw && fb.side[1].arc == rw))
        throw ClassificationFailure("two-radius flip: fan triangles are inconsistent");
    const SideRef x = fa.side[1];   // walks v -> w
    const SideRef y = fb.side[2];   // walks w -> v
    if (!(fa.corner[1] == Corner{false, v} && fa.corner[2] == Corner{false, w}))
        throw ClassificationFailure("two-radius flip: unexpected fan corners");

    const int other_label = arc_label_[rw];
    kill_arc(rv);
    IdealArc nl;
    nl.kind = IdealArc::Kind::loop;
    nl.base = w;
    const int nli = new_arc(nl, -1);

    const int hi = std::max(ff[0], ff[1]), lo = std::min(ff[0], ff[1]);
    remove_face(hi);
    remove_face(lo);
    Face outer;
    outer.side = {SideRef{nli, 0}, y, x};
    outer.corner = {Corner{false, w}, Corner{false, w}, Corner{false, v}};
    faces_.push_back(outer);
    Face sf;
    sf.self_folded = true;
    sf.loop_arc = nli;
    sf.radius_arc = rw;
    sf.side = {SideRef{nli, 0}, SideRef{rw, 0}, SideRef{rw, 0}};
    sf.corner = {Corner{false, w}, Corner{false, w}, Corner{true, 0}};
    faces_.push_back(sf);

    // the flipped label takes the tag opposite to the fan's; the dictionary
    // puts the notched label on the loop and the plain one on the radius
    if (!fan_tag_notched_) {
        label_arc_[k] = nli;
        arc_label_[nli] = k;
        // other label stays on rw (plain)
    } else {
        label_arc_[k] = rw;
        arc_label_[rw] = k;
        label_arc_[other_label] = nli;
        arc_label_[nli] = other_label;
    }
    pair_loop_ = nli;
    pair_radius_ = rw;
}

// ===========================================================================
// Symmetries
// ===========================================================================

LabeledTriangulation LabeledTriangulation::reflected(const Axis& ax) const {
    LabeledTriangulation g = *this;
    const long two_r = 2 * r_;
    auto refv = [&](long v) { return mod(2 * ax.anchor - 2 * v, two_r) / 2; };
    for (IdealArc& a : g.arcs_) {
        if (!a.alive) continue;
        if (a.kind == IdealArc::Kind::chord) {
            const long nf = refv(a.to), nt = refv(a.from);
            a.from = nf;
            a.to = nt;
            if (!punctured_ && a.from > a.to) std::swap(a.from, a.to);
        } else {
            a.base = refv(a.base);
        }
    }
    for (Face& f : g.faces_) {
        for (Corner& c : f.corner)
            if (!c.at_p) c.v = refv(c.v);
        for (SideRef& s : f.side)
            if (s.is_edge()) s.edge_from = mod(refv(s.edge_from) - 1, r_);
        // reflection reverses orientation; restore the clockwise cycle
        std::swap(f.side[0], f.side[2]);
        std::swap(f.corner[1], f.corner[2]);
    }
    return g;
}

LabeledTriangulation LabeledTriangulation::rotated(long steps) const {
    LabeledTriangulation g = *this;
    for (IdealArc& a : g.arcs_) {
        if (!a.alive) continue;
        if (a.kind == IdealArc::Kind::chord) {
            a.from = mod(a.from + steps, r_);
            a.to = mod(a.to + steps, r_);
            if (!punctured_ && a.from > a.to) std::swap(a.from, a.to);
        } else {
            a.base = mod(a.base + steps, r_);
        }
    }
    for (Face& f : g.faces_) {
        for (Corner& c : f.corner)
            if (!c.at_p) c.v = mod(c.v + steps, r_);
        for (SideRef& s : f.side)
            if (s.is_edge()) s.edge_from = mod(s.edge_from + steps, r_);
    }
    return g;
}

void LabeledTriangulation::relabel(const std::vector<int>& perm) {
    if (perm.size() != labels_.size())
        throw UnknownLabel("relabel: permutation size mismatch");
    std::vector<int> new_label_arc(labels_.size(), -1);
    for (size_t i = 0; i < perm.size(); ++i) {
        const int p = perm[i];
        if (p < 0 || p >= size() || new_label_arc[p] != -1)
            throw UnknownLabel("relabel: not a permutation");
        new_label_arc[p] = label_arc_[i];
    }
    label_arc_ = std::move(new_label_arc);
    for (size_t a = 0; a < arc_label_.size(); ++a) arc_label_[a] = -1;
    for (size_t i = 0; i < label_arc_.size(); ++i)
        arc_label_[label_arc_[i]] = static_cast<int>(i);
}

bool LabeledTriangulation::same_arcs_unlabeled(const LabeledTriangulation& o) const {
    return sorted_arcs() == o.sorted_arcs();
}

bool LabeledTriangulation::same_arcs_labeled(const LabeledTriangulation& o) const {
    return labels_ == o.labels_ && arcs() == o.arcs();
}

std::vector<int> LabeledTriangulation::axis_mutable(const Axis& ax) const {
    std::vector<int> out;
    for (int k = 0; k < size(); ++k) {
        const TaggedArc t = arc(k);
        if (arc_crosses(t, ax, punctured_) &&
            !(reflect_arc(t, ax, punctured_) == t))
            out.push_back(k);
    }
    return out;
}

bool quasi_symmetric(const LabeledTriangulation& g, const Axis& ax) {
    const std::vector<TaggedArc> all = g.sorted_arcs();
    auto present = [&](const TaggedArc& t) {
        return std::binary_search(all.begin(), all.end(), t);
    };
    std::vector<char> is_mut(g.size(), 0);
    for (int k : g.axis_mutable(ax)) is_mut[k] = 1;
    for (int k = 0; k < g.size(); ++k) {
        const TaggedArc image = reflect_arc(g.arc(k), ax, g.punctured());
        if (is_mut[k] ? present(image) : !present(image)) return false;
    }
    return true;
}

// ===========================================================================
// Validation
// ===========================================================================

namespace {

/** Vertices strictly inside the cw interval (x..y) of Z_r. */
long interior_vertices(long x, long y, long r) { return mod(y - x, r) - 1; }

}  // namespace

void LabeledTriangulation::validate() const {
    const long two_r = 2 * r_;
    // label <-> arc tables
    if (label_arc_.size() != labels_.size() || arc_label_.size() != arcs_.size())
        throw ClassificationFailure("label table sizes are inconsistent");
    for (size_t k = 0; k < label_arc_.size(); ++k) {
        const int ai = label_arc_[k];
        if (ai < 0 || !arcs_[ai].alive || arc_label_[ai] != static_cast<int>(k))
            throw ClassificationFailure("label " + to_string(labels_[k]) +
                                        " does not ride a live arc");
    }
    int live = 0, loops = 0, radii = 0;
    for (const IdealArc& a : arcs_)
        if (a.alive) {
            ++live;
            if (a.kind == IdealArc::Kind::loop) ++loops;
            if (a.kind == IdealArc::Kind::radius) ++radii;
        }
    if (live != size()) throw ClassificationFailure("live arc count != label count");
    if (!punctured_ && (loops || radii))
        throw ClassificationFailure("unpunctured polygon carries radii");
    if (punctured_) {
        if (in_pair_state()) {
            if (loops != 1 || radii != 1 ||
                arcs_[pair_loop_].kind != IdealArc::Kind::loop ||
                arcs_[pair_radius_].kind != IdealArc::Kind::radius ||
                arcs_[pair_loop_].base != arcs_[pair_radius_].base)
                throw ClassificationFailure("self-folded pair bookkeeping is broken");
        } else if (loops != 0 || radii < 2) {
            throw ClassificationFailure("fan state needs >= 2 radii and no loop");
        }
    }

    // face audit
    std::vector<int> ordinary_uses(arcs_.size(), 0);
    int sf_count = 0;
    for (const Face& f : faces_) {
        if (f.self_folded) {
            ++sf_count;
            if (f.loop_arc != pair_loop_ || f.radius_arc != pair_radius_)
                throw ClassificationFailure("self-folded triangle disagrees with the pair");
            continue;
        }
        for (int i = 0; i < 3; ++i) {
            const SideRef& s = f.side[i];
            const Corner& w1 = f.corner[i];
            const Corner& w2 = f.corner[(i + 1) % 3];
            if (s.is_edge()) {
                if (w1.at_p || w2.at_p || mod(w2.v - w1.v, r_) != 1 ||
                    s.edge_from != w1.v)
                    throw ClassificationFailure("face edge side walk is inconsistent");
                continue;
            }
            const IdealArc& a = arcs_[s.arc];
            if (!a.alive) throw ClassificationFailure("face references a dead arc");
            ++ordinary_uses[s.arc];
            switch (a.kind) {
                case IdealArc::Kind::chord:
                    if (w1.at_p || w2.at_p ||
                        !((a.from == w1.v && a.to == w2.v) ||
                          (a.from == w2.v && a.to == w1.v)))
                        throw ClassificationFailure("chord side walk mismatches its arc");
                    break;
                case IdealArc::Kind::radius:
                    if (w1.at_p == w2.at_p ||
                        (w1.at_p ? w2.v : w1.v) != a.base)
                        throw ClassificationFailure("radius side walk mismatches its arc");
                    break;
                case IdealArc::Kind::loop:
                    if (w1.at_p || w2.at_p || w1.v != a.base || w2.v != a.base)
                        throw ClassificationFailure("loop side walk mismatches its arc");
                    break;
            }
        }
    }
    if (sf_count != (in_pair_state() ? 1 : 0))
        throw ClassificationFailure("wrong number of self-folded triangles");
    for (size_t i = 0; i < arcs_.size(); ++i) {
        if (!arcs_[i].alive) continue;
        int want = 2;
        if (in_pair_state() && static_cast<int>(i) == pair_radius_) want = 0;
        if (arcs_[i].kind == IdealArc::Kind::loop) want = 1;
        if (ordinary_uses[i] != want)
            throw ClassificationFailure("arc appears in " + std::to_string(ordinary_uses[i]) +
                                        " ordinary triangles, expected " +
                                        std::to_string(want));
    }

    // pairwise compatibility of the tagged arcs
    const std::vector<TaggedArc> ts = arcs();
    for (const TaggedArc& t : ts) {
        if (t.kind != TaggedArc::Kind::chord) continue;
        if (t.from == t.to) throw CompatibilityFailure("chord joins a vertex to itself");
        if (interior_vertices(t.to, t.from, r_) < 1)
            throw CompatibilityFailure("chord has a vertex-empty far side");
        if (!punctured_ && interior_vertices(t.from, t.to, r_) < 1)
            throw CompatibilityFailure("diagonal has a vertex-empty side");
    }
    for (size_t i = 0; i < ts.size(); ++i)
        for (size_t j = i + 1; j < ts.size(); ++j) {
            const TaggedArc& s = ts[i];
            const TaggedArc& t = ts[j];
            const bool sc = s.kind == TaggedArc::Kind::chord;
            const bool tc = t.kind == TaggedArc::Kind::chord;
            bool ok = true;
            if (sc && tc) {
                const bool same_ends = (s.from == t.from && s.to == t.to) ||
                                       (s.from == t.to && s.to == t.from);
                if (same_ends) {
                    ok = punctured_ && !(s.from == t.from && s.to == t.to);
                } else if (s.from == t.from || s.from == t.to || s.to == t.from ||
                           s.to == t.to) {
                    ok = true;
                } else if (inside_cw(2 * s.from, 2 * s.to, 2 * t.from, two_r) !=
                           inside_cw(2 * s.from, 2 * s.to, 2 * t.to, two_r)) {
                    ok = false;   // interleaved endpoints always cross
                } else if (punctured_) {
                    const bool overlap =
                        inside_cw(2 * s.from, 2 * s.to, 2 * t.from, two_r) ||
                        inside_cw(2 * s.from, 2 * s.to, 2 * t.to, two_r) ||
                        inside_cw(2 * t.from, 2 * t.to, 2 * s.from, two_r) ||
                        inside_cw(2 * t.from, 2 * t.to, 2 * s.to, two_r);
                    ok = overlap;   // disjoint marked sides must wrap past each other
                }
            } else if (!sc && !tc) {
                ok = (s.base == t.base) ? (s.notched != t.notched)
                                        : (s.notched == t.notched);
            } else {
                const TaggedArc& ch = sc ? s : t;
                const TaggedArc& ra = sc ? t : s;
                ok = !(inside_cw(2 * ch.to, 2 * ch.from, 2 * ra.base, two_r));
            }
            if (!ok)
                throw CompatibilityFailure(to_string(s) + " and " + to_string(t) +
                                           " cross");
        }
}

}  // namespace ysys
