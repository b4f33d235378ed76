#include "ysys/ysystems.hpp"

#include <algorithm>

namespace ysys {

namespace {

/// Does the family have a stream (b, k)?
bool has_stream(const ContinuedFractionTable& t, bool punctured, int b,
                int k) {
    if (b == 1) {
        if (punctured)
            return k == -1 || k == -2 || (0 <= k && k <= t.n(1) - 2);
        return 1 <= k && k <= t.n(1) - 2;
    }
    if (2 <= b && b <= t.F()) return 1 <= k && k <= t.n(b);
    return false;
}

/// Ordinary (untagged) streams in chain order, one generation after another.
std::vector<std::pair<int, int>> chain_nodes(const ContinuedFractionTable& t,
                                             bool punctured) {
    std::vector<std::pair<int, int>> chain;
    for (int m = punctured ? 0 : 1; m <= t.n(1) - 2; ++m)
        chain.emplace_back(1, m);
    for (int a = 2; a <= t.F(); ++a)
        for (int m = 1; m <= t.n(a); ++m) chain.emplace_back(a, m);
    return chain;
}

/// Diagram neighbors of (a, m): chain adjacency plus the fork edges.
std::vector<std::pair<int, int>> neighbors(const ContinuedFractionTable& t,
                                           bool punctured, int a, int m) {
    std::vector<std::pair<int, int>> out;
    if (punctured && a == 1 && (m == -1 || m == -2)) {
        out.emplace_back(1, 0);
        return out;
    }
    const auto chain = chain_nodes(t, punctured);
    for (size_t i = 0; i < chain.size(); ++i) {
        if (chain[i] != std::pair<int, int>{a, m}) continue;
        if (i > 0) out.push_back(chain[i - 1]);
        if (i + 1 < chain.size()) out.push_back(chain[i + 1]);
        break;
    }
    if (punctured && a == 1 && m == 0) {
        out.emplace_back(1, -1);
        out.emplace_back(1, -2);
    }
    return out;
}

void push_factor(std::vector<RelationFactor>& rhs,
                 const ContinuedFractionTable& t, bool punctured, int b,
                 int k, long delta, int eps) {
    if (has_stream(t, punctured, b, k))
        rhs.push_back(RelationFactor{b, k, delta, eps});
}

/// Generic adjacency relation, including the loop self-factor at (2,1)
/// when the first entry is 2 and the family is plain.
Relation generic_relation(const ContinuedFractionTable& t, bool punctured,
                          int a, int m) {
    Relation rel;
    rel.a = a;
    rel.m = m;
    rel.p = t.p_l(a);
    for (auto [b, k] : neighbors(t, punctured, a, m))
        push_factor(rel.rhs, t, punctured, b, k, 0, t.eps(b));
    if (!punctured && t.n(1) == 2 && a == 2 && m == 1)
        push_factor(rel.rhs, t, punctured, 2, 1, 0, t.eps(2));
    return rel;
}

/// Exceptional relation for (2,1): explicit shifted first-generation
/// factors.  The plain form keeps an unshifted (1,1) factor and starts the
/// product at m = 1; the punctured form adds both tag factors and starts
/// the product at m = 0.
Relation head_relation(const ContinuedFractionTable& t, bool punctured) {
    Relation rel;
    rel.a = 2;
    rel.m = 1;
    rel.p = t.p_l(2);
    push_factor(rel.rhs, t, punctured, 2, 2, 0, -1);
    // A single-stream second generation makes (2,1) also the top of its
    // chain: the successor factor then comes from generation three and
    // carries that generation's own sign, as in the interior shape.
    if (t.n(2) == 1) push_factor(rel.rhs, t, punctured, 3, 1, 0, t.eps(3));
    if (punctured) {
        push_factor(rel.rhs, t, punctured, 1, -1, 0, -1);
        push_factor(rel.rhs, t, punctured, 1, -2, 0, -1);
    } else {
        push_factor(rel.rhs, t, punctured, 1, 1, 0, +1);
    }
    for (int m = punctured ? 0 : 1; m <= t.n(1) - 2; ++m) {
        push_factor(rel.rhs, t, punctured, 1, m, -(1 + m), -1);
        push_factor(rel.rhs, t, punctured, 1, m, +(1 + m), -1);
    }
    return rel;
}

/// Exceptional relation for (a,1), a >= 3: every factor carries the sign
/// of generation a itself.
Relation deep_relation(const ContinuedFractionTable& t, bool punctured,
                       int a) {
    Relation rel;
    rel.a = a;
    rel.m = 1;
    rel.p = t.p_l(a);
    const int eps = t.eps(a);
    push_factor(rel.rhs, t, punctured, a, 2, 0, eps);
    // Single-stream generation: (a,1) is also the top of its chain, so the
    // successor factor comes from the next generation with its own sign.
    if (t.n(a) == 1)
        push_factor(rel.rhs, t, punctured, a + 1, 1, 0, t.eps(a + 1));
    const int back_k = (a == 3) ? t.n(1) - 2 : t.n(a - 2);
    push_factor(rel.rhs, t, punctured, a - 2, back_k, 0, eps);
    const long pa = t.p_l(a);
    const long pa1 = t.p_l(a - 1);
    for (int m = 1; m <= t.n(a - 1); ++m) {
        const long off = pa - (t.n(a - 1) + 1 - m) * pa1;
        push_factor(rel.rhs, t, punctured, a - 1, m, -off, eps);
        push_factor(rel.rhs, t, punctured, a - 1, m, +off, eps);
    }
    return rel;
}

}  // namespace

const Relation& RelationSet::find(int a, int m) const {
    for (const Relation& r : relations)
        if (r.a == a && r.m == m) return r;
    throw UnknownLabel("no relation for stream (" + std::to_string(a) + "," +
                       std::to_string(m) + ")");
}

std::string to_string(const RelationFactor& f) {
    std::ostringstream os;
    os << "(1+Y(" << f.b << "," << f.k << ")(u";
    if (f.delta >= 0)
        os << "+" << f.delta;
    else
        os << f.delta;
    os << ")^" << (f.eps > 0 ? "+1" : "-1") << ")^"
       << (f.eps > 0 ? "+1" : "-1");
    return os.str();
}

std::string to_string(const Relation& r) {
    std::ostringstream os;
    os << "Y(" << r.a << "," << r.m << ")(u-" << r.p << ")*Y(" << r.a << ","
       << r.m << ")(u+" << r.p << ") =";
    if (r.rhs.empty()) os << " 1";
    for (const RelationFactor& f : r.rhs) os << " " << to_string(f);
    return os.str();
}

std::vector<std::pair<int, int>> stream_index_set(
    const ContinuedFractionTable& t, bool punctured) {
    std::vector<std::pair<int, int>> out;
    if (punctured) {
        out.emplace_back(1, -2);
        out.emplace_back(1, -1);
    }
    for (auto node : chain_nodes(t, punctured)) out.push_back(node);
    std::sort(out.begin(), out.end());
    return out;
}

RelationSet generate_relations(const ContinuedFractionTable& t,
                               bool punctured) {
    RelationSet rs;
    rs.punctured = punctured;
    for (auto [a, m] : stream_index_set(t, punctured)) {
        Relation rel;
        if (a == 2 && m == 1 && (punctured || t.n(1) != 2))
            rel = head_relation(t, punctured);
        else if (a >= 3 && m == 1)
            rel = deep_relation(t, punctured, a);
        else
            rel = generic_relation(t, punctured, a, m);
        std::sort(rel.rhs.begin(), rel.rhs.end());
        rs.relations.push_back(std::move(rel));
    }
    return rs;
}

// ===========================================================================
// Bisection
// ===========================================================================

HalfClass bisect(const ContinuedFractionTable& t, bool punctured, int a,
                 int m, long u) {
    return occurs_at(t, punctured, a, m, u) ? HalfClass::plus
                                            : HalfClass::minus;
}

bool bisection_closed(const ContinuedFractionTable& t, bool punctured,
                      const RelationSet& rs) {
    const long period = 2 * t.r_l(1);
    for (long u = 0; u < period; ++u)
        for (const Relation& rel : rs.relations) {
            const HalfClass side =
                bisect(t, punctured, rel.a, rel.m, u + rel.p);
            if (bisect(t, punctured, rel.a, rel.m, u - rel.p) != side)
                return false;
            for (const RelationFactor& f : rel.rhs)
                if (bisect(t, punctured, f.b, f.k, u + f.delta) != side)
                    return false;
        }
    return true;
}

// ===========================================================================
// Punctured -> plain reduction
// ===========================================================================

namespace {

/// ((1 + Y^(b)_k(u+delta)^inner))^outer — the generated sets always have
/// inner == outer, but the rewrite temporarily splits them.
struct SymFactor {
    int b, k;
    long delta;
    int inner, outer;
};

/// Y^(b)_k(u+delta)^e.
struct SymMonomial {
    int b, k;
    long delta;
    int e;
};

bool frozen_stream(int b, int k) { return b == 1 && k <= 0; }

}  // namespace

RelationSet reduce_to_plain(const RelationSet& punctured_set,
                            const ContinuedFractionTable& t) {
    if (!punctured_set.punctured)
        throw RejectedInput("reduce_to_plain: input must be punctured");
    long want = 1;
    for (int a = 1; a <= t.F(); ++a) want += t.n(a);
    if (static_cast<long>(punctured_set.relations.size()) != want)
        throw RejectedInput(
            "reduce_to_plain: relation set does not match the table");

    // The stem relation, used as a substitution rule for Y0(c-1)*Y0(c+1).
    const Relation& stem = punctured_set.find(1, 0);

    RelationSet out;
    out.punctured = false;
    for (const Relation& rel : punctured_set.relations) {
        if (frozen_stream(rel.a, rel.m)) continue;  // frozen left-hand side

        std::vector<SymFactor> fac;
        std::vector<SymMonomial> mon;
        for (const RelationFactor& f : rel.rhs)
            fac.push_back(SymFactor{f.b, f.k, f.delta, f.eps, f.eps});

        // Peel inverted frozen factors: (1+Y^-1)^-1 = Y * (1+Y)^-1.
        for (SymFactor& f : fac)
            if (frozen_stream(f.b, f.k) && f.inner == -1) {
                mon.push_back(SymMonomial{f.b, f.k, f.delta, +1});
                f.inner = +1;
            }

        // Substitute the stem relation for Y0(c-1)*Y0(c+1) pairs.
        for (bool changed = true; changed;) {
            changed = false;
            for (size_t i = 0; i < mon.size() && !changed; ++i)
                for (size_t j = i + 1; j < mon.size() && !changed; ++j) {
                    const SymMonomial &x = mon[i], &y = mon[j];
                    if (x.b != 1 || x.k != 0 || y.b != 1 || y.k != 0)
                        continue;
                    if (x.e != +1 || y.e != +1) continue;
                    const long d = y.delta - x.delta;
                    if (d != 2 && d != -2) continue;
                    const long c = (x.delta + y.delta) / 2;
                    for (const RelationFactor& sf : stem.rhs)
                        fac.push_back(SymFactor{sf.b, sf.k, c + sf.delta,
                                                sf.eps, sf.eps});
                    mon.erase(mon.begin() + static_cast<long>(j));
                    mon.erase(mon.begin() + static_cast<long>(i));
                    changed = true;
                }
        }

        // Cancel opposite-exponent copies of the same frozen factor.
        for (bool changed = true; changed;) {
            changed = false;
            for (size_t i = 0; i < fac.size() && !changed; ++i)
                for (size_t j = 0; j < fac.size() && !changed; ++j) {
                    if (i == j) continue;
                    const SymFactor &x = fac[i], &y = fac[j];
                    if (!frozen_stream(x.b, x.k)) continue;
                    if (x.b != y.b || x.k != y.k || x.delta != y.delta)
                        continue;
                    if (x.inner != y.inner || x.outer != -y.outer) continue;
                    fac.erase(fac.begin() + static_cast<long>(std::max(i, j)));
                    fac.erase(fac.begin() + static_cast<long>(std::min(i, j)));
                    changed = true;
                }
        }

        // Specialize: stem value 0 turns (1 + Y0) into 1; the two tag
        // values -1 multiply to 1 whenever they appear at matched shifts.
        std::erase_if(fac, [](const SymFactor& f) {
            return f.b == 1 && f.k == 0 && f.inner == +1;
        });
        for (bool changed = true; changed;) {
            changed = false;
            for (size_t i = 0; i < mon.size() && !changed; ++i)
                for (size_t j = i + 1; j < mon.size() && !changed; ++j) {
                    const SymMonomial &x = mon[i], &y = mon[j];
                    if (x.b != 1 || y.b != 1) continue;
                    if (!((x.k == -1 && y.k == -2) ||
                          (x.k == -2 && y.k == -1)))
                        continue;
                    if (x.delta != y.delta || x.e != y.e) continue;
                    mon.erase(mon.begin() + static_cast<long>(j));
                    mon.erase(mon.begin() + static_cast<long>(i));
                    changed = true;
                }
        }

        if (!mon.empty())
            throw IdentityViolation(
                "reduce_to_plain: unresolved monomial on stream (" +
                std::to_string(mon.front().b) + "," +
                std::to_string(mon.front().k) + ")");

        Relation plain;
        plain.a = rel.a;
        plain.m = rel.m;
        plain.p = rel.p;
        for (const SymFactor& f : fac) {
            if (frozen_stream(f.b, f.k) || f.inner != f.outer)
                throw IdentityViolation(
                    "reduce_to_plain: unresolved factor on stream (" +
                    std::to_string(f.b) + "," + std::to_string(f.k) + ")");
            plain.rhs.push_back(RelationFactor{f.b, f.k, f.delta, f.inner});
        }
        std::sort(plain.rhs.begin(), plain.rhs.end());
        out.relations.push_back(std::move(plain));
    }
    return out;
}

}  // namespace ysys
