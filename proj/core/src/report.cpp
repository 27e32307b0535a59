#include "flagsieve/report.hpp"

#include <sstream>

namespace flagsieve {

using nlohmann::json;

json to_json(const DesignParams& p) {
    return json{{"v", p.v.str()}, {"k", p.k.str()}, {"lambda", p.lambda.str()}};
}

json to_json(const SieveReport& r) {
    json s = json::array();
    for (const auto& p : r.survivors) s.push_back(to_json(p));
    return json{{"context", r.context},
                {"survivors", s},
                {"checks_applied", r.checks_applied}};
}

json to_json(const EliminationTrace& t) {
    json j;
    j["lemma_id"] = t.lemma_id;
    j["family_line"] = t.family_line;
    j["q"] = t.q.str();
    if (t.q0 != 0) {
        j["q0"] = t.q0.str();
        j["r"] = t.r.str();
    }
    j["v"] = t.v.str();
    j["k_bound"] = t.k_bound.str();
    if (t.printed_v != 0) j["printed_v"] = t.printed_v.str();
    if (t.printed_k_bound != 0) j["printed_k_bound"] = t.printed_k_bound.str();
    if (t.m_range.second != 0)
        j["m_range"] = {t.m_range.first.str(), t.m_range.second.str()};
    json fv = json::array();
    for (const auto& [name, val] : t.forced_values)
        fv.push_back(json{{"symbol", name}, {"value", val.str()}});
    j["forced_values"] = fv;
    json pv = json::array();
    for (const auto& [name, val] : t.polynomial_values)
        pv.push_back(json{{"name", name}, {"value", val.str()}});
    j["polynomial_values"] = pv;
    j["failure_reason"] = to_string(t.failure_reason);
    json sv = json::array();
    for (const auto& p : t.survivors) sv.push_back(to_json(p));
    j["survivors"] = sv;
    j["notes"] = t.notes;
    json dc = json::array();
    for (const auto& d : t.degree_checks)
        dc.push_back(json{{"inequality", d.inequality},
                          {"lhs_degree", d.lhs_degree},
                          {"rhs_degree", d.rhs_degree},
                          {"eliminates_here", d.eliminates_here},
                          {"degree_dominated", d.degree_dominated}});
    j["degree_checks"] = dc;
    return j;
}

json to_json(const CellResult& c) {
    return json{{"family_line", c.family_line},
                {"q", c.q.str()},
                {"trace", to_json(c.trace)},
                {"oracle", to_json(c.oracle)},
                {"agree", c.agree}};
}

json elimination_report(const std::vector<CellResult>& cells,
                        const Integer& qmax, std::optional<int> family,
                        std::uint64_t seed) {
    json j;
    j["schema"] = 1;
    j["command"] = "eliminate";
    j["qmax"] = qmax.str();
    if (family) j["family"] = *family;
    j["seed"] = seed;
    json cs = json::array();
    std::size_t survivors = 0, disagreements = 0;
    for (const auto& c : cells) {
        cs.push_back(to_json(c));
        survivors += c.trace.survivors.size() + c.oracle.survivors.size();
        if (!c.agree) ++disagreements;
    }
    j["cells"] = cs;
    j["summary"] = json{{"cells", cells.size()},
                        {"survivors", survivors},
                        {"disagreements", disagreements}};
    return j;
}

json construct_report(const ConstructReport& rep, std::uint64_t seed) {
    json j;
    j["schema"] = 1;
    j["command"] = "construct";
    j["seed"] = seed;
    json ds = json::array();
    for (const auto& d : rep.designs) {
        auto cert = d.certificate();
        ds.push_back(json{{"id", d.id},
                          {"group", d.group},
                          {"action", d.action},
                          {"point_stabilizer", d.point_stabilizer},
                          {"point_stabilizer_order", d.point_stab_order.str()},
                          {"block_helper", d.block_helper},
                          {"params", to_json(d.params)},
                          {"flag_transitive_socle", d.ft_socle},
                          {"flag_transitive_extension", d.ft_extension},
                          {"point_primitive", d.primitive},
                          {"certified_group_order", cert.group_order.str()},
                          {"certified_stabilizer_order",
                           cert.stabilizer_order.str()}});
    }
    j["designs"] = ds;
    json cls = json::array();
    for (const auto& c : rep.iso_classes) {
        json members = json::array();
        for (auto i : c) members.push_back(rep.designs[i].id);
        cls.push_back(members);
    }
    j["iso_classes"] = cls;
    json ws = json::array();
    for (const auto& w : rep.witnesses)
        ws.push_back(json{{"a", rep.designs[w.a].id},
                          {"b", rep.designs[w.b].id},
                          {"witness", w.map}});
    j["witnesses"] = ws;
    json ls = json::array();
    for (const auto& l : rep.lambda_set) ls.push_back(l.str());
    j["lambda_set"] = ls;
    j["pg_complement_class"] = rep.pg_complement_class;
    if (!rep.pg_witness.empty()) j["pg_witness"] = rep.pg_witness;
    j["log"] = rep.log;
    return j;
}

std::string render_text(const std::vector<CellResult>& cells) {
    std::ostringstream out;
    int last_line = 0;
    for (const auto& c : cells) {
        if (c.family_line != last_line) {
            out << "family " << c.family_line << "\n";
            last_line = c.family_line;
        }
        out << "  q=" << c.q.str() << " v=" << c.trace.v.str()
            << " reason=" << to_string(c.trace.failure_reason)
            << " survivors=[";
        for (std::size_t i = 0; i < c.trace.survivors.size(); ++i) {
            const auto& p = c.trace.survivors[i];
            out << (i ? " " : "") << "(" << p.v.str() << "," << p.k.str()
                << "," << p.lambda.str() << ")";
        }
        out << "] oracle=" << (c.oracle.survivors.empty() ? "empty" : "NONEMPTY")
            << " agree=" << (c.agree ? "yes" : "NO") << "\n";
    }
    return out.str();
}

std::string render_text(const ConstructReport& rep) {
    std::ostringstream out;
    for (const auto& d : rep.designs) {
        out << d.id << ": (" << d.params.v.str() << "," << d.params.k.str()
            << "," << d.params.lambda.str() << ") on " << d.action
            << "; blocks from " << d.block_helper
            << "-orbits; flag-transitive "
            << (d.ft_socle ? "under the socle"
                           : (d.ft_extension ? "under the .2 extension only"
                                             : "NO"))
            << "; " << (d.primitive ? "primitive" : "IMPRIMITIVE") << "\n";
    }
    out << "isomorphism classes: " << rep.iso_classes.size() << "\n";
    for (const auto& c : rep.iso_classes) {
        out << "  {";
        for (std::size_t i = 0; i < c.size(); ++i)
            out << (i ? ", " : "") << rep.designs[c[i]].id;
        out << "}\n";
    }
    out << "lambda set: {";
    bool first = true;
    for (const auto& l : rep.lambda_set) {
        out << (first ? "" : ", ") << l.str();
        first = false;
    }
    out << "}\n";
    if (rep.pg_complement_class >= 0)
        out << "PG(3,3) complement matches class "
            << rep.pg_complement_class + 1 << "\n";
    return out.str();
}

}  // namespace flagsieve
