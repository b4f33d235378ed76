#include "ysys/json_io.hpp"

namespace ysys {

namespace {

nlohmann::json arc_json(const TaggedArc& a) {
    nlohmann::json j;
    if (a.kind == TaggedArc::Kind::chord) {
        j["kind"] = "chord";
        j["from"] = a.from;
        j["to"] = a.to;
    } else {
        j["kind"] = "radius";
        j["base"] = a.base;
        j["notched"] = a.notched;
    }
    return j;
}

template <class SF>
nlohmann::json occurrence_list(const std::map<OccurrenceKey, SF>& vals,
                               bool exact) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [key, val] : vals) {
        const auto [a, m, u] = key;
        nlohmann::json row;
        row["a"] = a;
        row["m"] = m;
        row["u"] = u;
        if constexpr (std::is_same_v<SF, ExactPositiveRational>)
            row["y"] = val.v.get_str();
        else
            row["y"] = val.v;
        (void)exact;
        out.push_back(row);
    }
    return out;
}

}  // namespace

nlohmann::json table_json(const ContinuedFractionTable& t) {
    nlohmann::json j;
    j["n"] = nlohmann::json::array();
    for (int a = 1; a <= t.F(); ++a) j["n"].push_back(t.n(a));
    j["p"] = nlohmann::json::array();
    for (int a = 1; a <= t.F() + 1; ++a) j["p"].push_back(t.p_l(a));
    j["q"] = nlohmann::json::array();
    for (int a = 1; a <= t.F(); ++a) j["q"].push_back(t.p_l(a + 1));
    j["r"] = nlohmann::json::array();
    for (int k = 1; k <= t.F() + 2; ++k) j["r"].push_back(t.r_l(k));
    mpq_class af(t.r_l(2), t.r_l(1));
    af.canonicalize();
    j["A_F"] = af.get_str();
    return j;
}

nlohmann::json triangulation_json(const LabeledTriangulation& g) {
    nlohmann::json j;
    j["r"] = g.r();
    j["punctured"] = g.punctured();
    j["size"] = g.size();
    j["arcs"] = nlohmann::json::array();
    for (int k = 0; k < g.size(); ++k) {
        const Label& l = g.labels()[static_cast<size_t>(k)];
        nlohmann::json row;
        row["label"] = {{"a", l.a}, {"m", l.m}, {"s", l.s}};
        row["arc"] = arc_json(g.arc(k));
        j["arcs"].push_back(row);
    }
    return j;
}

namespace {

nlohmann::json stream_counts(const std::map<std::pair<int, int>, long>& per) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [am, count] : per)
        out.push_back({{"a", am.first}, {"m", am.second}, {"count", count}});
    return out;
}

}  // namespace

nlohmann::json relation_report_json(const RelationReport& rep) {
    nlohmann::json j;
    j["instances"] = rep.instances;
    j["per_stream"] = stream_counts(rep.per_stream);
    return j;
}

nlohmann::json t_relation_report_json(const TRelationReport& rep) {
    nlohmann::json j;
    j["instances"] = rep.instances;
    j["per_stream"] = stream_counts(rep.per_stream);
    return j;
}

nlohmann::json period_report_json(const PeriodReport& rep) {
    nlohmann::json j;
    j["period"] = rep.period;
    j["half_swap"] = rep.half_swap;
    j["checked"] = rep.checked;
    j["refuted_divisors"] = rep.refuted_divisors;
    return j;
}

nlohmann::json cross_ratio_report_json(const CrossRatioReport& rep) {
    nlohmann::json j;
    j["relation_instances"] = rep.relation_instances;
    j["occurrences_checked"] = rep.occurrences_checked;
    return j;
}

nlohmann::json dilog_report_json(const DilogReport& rep) {
    nlohmann::json j;
    j["occurrences"] = rep.occurrences;
    j["s_plus"] = rep.s_plus;
    j["s_minus"] = rep.s_minus;
    j["n_plus"] = rep.n_plus;
    j["n_minus"] = rep.n_minus;
    j["m_plus"] = rep.m_plus;
    j["m_minus"] = rep.m_minus;
    j["A_F"] = rep.a_f.get_str();
    j["n_plus_by_generation"] = rep.n_plus_by_gen;
    j["n_minus_by_generation"] = rep.n_minus_by_gen;
    return j;
}

nlohmann::json trajectory_json(const Trajectory<ExactPositiveRational>& tr) {
    nlohmann::json j;
    j["mode"] = "exact";
    j["punctured"] = tr.punctured;
    j["window"] = {tr.u_lo, tr.u_hi};
    j["occurrences"] = occurrence_list(tr.occurrence_values, true);
    return j;
}

nlohmann::json trajectory_json(const Trajectory<Float64Positive>& tr) {
    nlohmann::json j;
    j["mode"] = "float";
    j["punctured"] = tr.punctured;
    j["window"] = {tr.u_lo, tr.u_hi};
    j["occurrences"] = occurrence_list(tr.occurrence_values, false);
    return j;
}

std::string dump_stable(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace ysys
