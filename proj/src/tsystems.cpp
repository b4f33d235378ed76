#include "ysys/tsystems.hpp"

#include <set>

namespace ysys {

namespace {

struct Builder {
    const ContinuedFractionTable& t;
    bool punctured;
    std::set<std::pair<int, int>> streams;

    explicit Builder(const ContinuedFractionTable& table, bool p)
        : t(table), punctured(p) {
        const auto v = stream_index_set(t, p);
        streams.insert(v.begin(), v.end());
    }

    /// Append T^(b)_k(u+delta) unless it resolves to the constant 1.
    void push(std::vector<TFactor>& mono, int b, int k, long delta) const {
        if (streams.count({b, k})) mono.push_back(TFactor{b, k, delta});
    }

    /// Adjacency monomial: one unshifted factor per diagram neighbor.
    std::vector<TFactor> adjacency(int a, int m) const;

    TRelation make(int a, int m) const;
};

std::vector<TFactor> Builder::adjacency(int a, int m) const {
    std::vector<TFactor> mono;
    if (punctured && a == 1 && (m == -1 || m == -2)) {
        push(mono, 1, 0, 0);
        return mono;
    }
    if (punctured && a == 1 && m == 0) {
        push(mono, 1, -1, 0);
        push(mono, 1, -2, 0);
    }
    // Chain neighbors: previous and next node in generation order.
    if (a == 1) {
        if (m > (punctured ? 0 : 1)) push(mono, 1, m - 1, 0);
        if (m < t.n(1) - 2)
            push(mono, 1, m + 1, 0);
        else
            push(mono, 2, 1, 0);
    } else {
        if (m > 1)
            push(mono, a, m - 1, 0);
        else if (a == 2)
            push(mono, 1, t.n(1) - 2, 0);
        else
            push(mono, a - 1, t.n(a - 1), 0);
        if (m < t.n(a))
            push(mono, a, m + 1, 0);
        else
            push(mono, a + 1, 1, 0);
    }
    // The n_1 = 2 loop: the head stream is its own neighbor.
    if (!punctured && t.n(1) == 2 && a == 2 && m == 1)
        push(mono, 2, 1, 0);
    return mono;
}

TRelation Builder::make(int a, int m) const {
    TRelation rel;
    rel.a = a;
    rel.m = m;
    rel.p = t.p_l(a);

    if (punctured && a == 1 && (m == -1 || m == -2)) {
        // Tag streams: stem plus next generation, both unshifted.
        push(rel.mono1, 1, 0, 0);
        push(rel.mono2, 2, 1, 0);
    } else if (a == 1 && m == t.n(1) - 2) {
        // Top of the first generation: the chain factor below stays, the
        // link above skips one generation, and the shifted pair sits at
        // the near edges of the second generation.  On the punctured
        // n_1 = 2 family the below-chain factor becomes the two tags.
        if (punctured && t.n(1) == 2) {
            push(rel.mono1, 1, -1, 0);
            push(rel.mono1, 1, -2, 0);
        } else {
            push(rel.mono1, 1, m - 1, 0);
        }
        // A three-term first generation has a single stream, which is
        // simultaneously the bottom and the top of its chain; it keeps the
        // bottom shape's unshifted second-generation factor as well.
        if (!punctured && m == 1) push(rel.mono1, 2, 1, 0);
        push(rel.mono1, 3, 1, 0);
        const long d = t.p_l(2) - 1;
        push(rel.mono2, 2, 1, -d);
        push(rel.mono2, 2, 1, +d);
    } else if (a == 1 && m == 1 && !punctured) {
        // Bottom of a plain first generation: the next generation joins
        // the adjacency monomial unshifted.
        push(rel.mono1, 1, 2, 0);
        push(rel.mono1, 2, 1, 0);
        push(rel.mono2, 2, 1, -2);
        push(rel.mono2, 2, 1, +2);
    } else if (a == 1) {
        rel.mono1 = adjacency(a, m);
        push(rel.mono2, 2, 1, -(1 + m));
        push(rel.mono2, 2, 1, +(1 + m));
    } else if (m == t.n(a)) {
        // Top of a deeper generation: chain factor below, link two
        // generations up, shifted pair at the near edges of the next.
        push(rel.mono1, a, m - 1, 0);
        // A single-stream generation is also the bottom of its chain, so
        // the factor below comes from the previous generation (or, on the
        // two-term family, from the loop).
        if (m == 1) {
            if (a == 2)
                push(rel.mono1, 1, t.n(1) - 2, 0);
            else
                push(rel.mono1, a - 1, t.n(a - 1), 0);
            if (!punctured && t.n(1) == 2 && a == 2) push(rel.mono1, 2, 1, 0);
        }
        push(rel.mono1, a + 2, 1, 0);
        const long d = t.p_l(a + 1) - t.p_l(a);
        push(rel.mono2, a + 1, 1, -d);
        push(rel.mono2, a + 1, 1, +d);
    } else {
        rel.mono1 = adjacency(a, m);
        const long d = t.p_l(a + 1) - (t.n(a) + 1 - m) * t.p_l(a);
        push(rel.mono2, a + 1, 1, -d);
        push(rel.mono2, a + 1, 1, +d);
    }
    std::sort(rel.mono1.begin(), rel.mono1.end());
    std::sort(rel.mono2.begin(), rel.mono2.end());
    return rel;
}

}  // namespace

const TRelation& TRelationSet::find(int a, int m) const {
    for (const TRelation& r : relations)
        if (r.a == a && r.m == m) return r;
    throw UnknownLabel("no additive relation for stream (" +
                       std::to_string(a) + "," + std::to_string(m) + ")");
}

std::string to_string(const TRelation& r) {
    const auto mono = [](const std::vector<TFactor>& fs) {
        if (fs.empty()) return std::string("1");
        std::string s;
        for (size_t i = 0; i < fs.size(); ++i) {
            if (i) s += "*";
            s += "T(" + std::to_string(fs[i].b) + "," +
                 std::to_string(fs[i].k) + ")(u";
            if (fs[i].delta >= 0) s += "+";
            s += std::to_string(fs[i].delta) + ")";
        }
        return s;
    };
    std::ostringstream os;
    os << "T(" << r.a << "," << r.m << ")(u-" << r.p << ")*T(" << r.a << ","
       << r.m << ")(u+" << r.p << ") = " << mono(r.mono1) << " + "
       << mono(r.mono2);
    return os.str();
}

TRelationSet generate_t_relations(const ContinuedFractionTable& t,
                                  bool punctured) {
    const Builder b(t, punctured);
    TRelationSet rs;
    rs.punctured = punctured;
    for (auto [a, m] : stream_index_set(t, punctured))
        rs.relations.push_back(b.make(a, m));
    return rs;
}

}  // namespace ysys
