/// @file json_io.hpp
/// JSON encodings of the public value types. Schemas are versioned; floats
/// are emitted as fixed nine-decimal strings so artifacts are byte-stable.

#pragma once

#include "helix/spread.hpp"
#include "helix/stability.hpp"

#include <json.hpp>

#include <cstdio>

namespace helix {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline std::string fmt9(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", x);
    return buf;
}

inline long long to_ll(const Int& x)
{
    if (x > std::numeric_limits<long long>::max() ||
        x < std::numeric_limits<long long>::min())
        throw std::overflow_error("integer too large for JSON emission");
    return x.convert_to<long long>();
}

inline json json_of(const IntPair& p) { return json::array({to_ll(p[0]), to_ll(p[1])}); }

inline json roots_json(const std::vector<Root>& roots)
{
    json arr = json::array();
    for (const auto& r : roots) {
        json c = json::array();
        for (const auto& x : r.coords)
            c.push_back(to_ll(x));
        arr.push_back(std::move(c));
    }
    return {{"schema_version", kSchemaVersion}, {"roots", arr}};
}

inline json restricted_roots_json(const std::vector<IntPair>& roots)
{
    json arr = json::array();
    for (const auto& p : roots)
        arr.push_back(json_of(p));
    return {{"schema_version", kSchemaVersion}, {"restricted_roots", arr}};
}

inline json arrangement_json(const Arrangement& a)
{
    json lines = json::array();
    for (const auto& l : a.lines)
        lines.push_back(json_of(l));
    return {{"schema_version", kSchemaVersion},
            {"lines", lines},
            {"accumulation_direction", json_of(a.accumulation_direction)}};
}

inline json classes_json(const RootClasses& c)
{
    json reps = json::array();
    for (const auto& r : c.representatives)
        reps.push_back(json_of(r));
    return {{"schema_version", kSchemaVersion},
            {"class_representatives", reps},
            {"imaginary_line_excluded", c.imaginary_line_excluded},
            {"stable", c.stable},
            {"bound", to_ll(c.bound_used)}};
}

inline json phases_json(const PhaseSet& ps)
{
    json entries = json::array();
    for (const auto& [root, phi] : ps.entries)
        entries.push_back({{"root", json_of(root)}, {"phase", fmt9(phi)}});
    return {{"schema_version", kSchemaVersion},
            {"phases", entries},
            {"accumulation", json::array({fmt9(ps.accumulation[0]), fmt9(ps.accumulation[1])})}};
}

inline std::string phases_csv(const PhaseSet& ps)
{
    std::string out = "root_0,root_1,phase\n";
    for (const auto& [root, phi] : ps.entries)
        out += to_string(root[0]) + "," + to_string(root[1]) + "," + fmt9(phi) + "\n";
    return out;
}

inline json gap_json(const GapResult& g, const Int& bound)
{
    json j = {{"schema_version", kSchemaVersion}, {"bound", to_ll(bound)}};
    if (std::holds_alternative<PhaseGap>(g)) {
        const auto& gap = std::get<PhaseGap>(g);
        j["kind"] = "gap";
        j["phi"] = fmt9(gap.phi);
        j["epsilon"] = fmt9(gap.epsilon);
        j["stable"] = true;
    } else if (std::holds_alternative<IntegerSpaced>(g)) {
        j["kind"] = "integer_spaced";
        j["stable"] = true;
    } else {
        j["kind"] = "unstable";
        j["stable"] = false;
        j["reason"] = std::get<GapUnstable>(g).reason;
    }
    return j;
}

inline json word_json(const FunctorWord& w, const KMatrix& m)
{
    return {{"schema_version", kSchemaVersion},
            {"normal_form", format_word(w)},
            {"k_matrix", json::array({json::array({to_ll(m.a[0][0]), to_ll(m.a[0][1])}),
                                      json::array({to_ll(m.a[1][0]), to_ll(m.a[1][1])})})},
            {"det", to_ll(m.det())}};
}

inline json chain_json(const std::vector<HeartLabel>& labels)
{
    json arr = json::array();
    for (const auto& h : labels)
        arr.push_back({{"side", h.side == HeartLabel::Upper ? "upper" : "lower"},
                       {"position", h.position},
                       {"algebra_index", h.algebra_index},
                       {"word", format_word(h.word)},
                       {"label", h.text()}});
    return {{"schema_version", kSchemaVersion}, {"chain", arr}};
}

inline std::string node_name(const ChamberNode& n)
{
    return std::to_string(n.chamber) + ":" + std::to_string(n.shift);
}

inline json graph_json(const ExchangeGraph& g)
{
    json nodes = json::array(), edges = json::array();
    for (const auto& n : g.nodes)
        nodes.push_back(node_name(n));
    for (const auto& [a, b] : g.edges)
        edges.push_back(json::array({node_name(a), node_name(b)}));
    return {{"schema_version", kSchemaVersion}, {"nodes", nodes}, {"edges", edges}};
}

inline std::string graph_dot(const ExchangeGraph& g)
{
    std::string out = "graph exchange {\n";
    for (const auto& n : g.nodes)
        out += "  \"" + node_name(n) + "\";\n";
    for (const auto& [a, b] : g.edges)
        out += "  \"" + node_name(a) + "\" -- \"" + node_name(b) + "\";\n";
    out += "}\n";
    return out;
}

// ---------------------------------------------------------------------------
// Representations and profiles

inline json rep_json(const Algebra& q, const Representation& m)
{
    json arrows = json::object();
    for (std::size_t i = 0; i < q.arrows.size(); ++i) {
        json rows = json::array();
        for (std::size_t r = 0; r < m.maps[i].rows(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < m.maps[i].cols(); ++c)
                row.push_back(to_string(m.maps[i](r, c)));
            rows.push_back(std::move(row));
        }
        arrows[q.arrows[i].label] = std::move(rows);
    }
    return {{"dims", json::array({m.dims[0], m.dims[1]})}, {"arrows", arrows}};
}

inline Representation rep_from_json(const Algebra& q, const json& j)
{
    Representation m;
    m.dims = {j.at("dims").at(0).get<int>(), j.at("dims").at(1).get<int>()};
    for (const auto& a : q.arrows) {
        RatMatrix mat(m.dims[a.dst], m.dims[a.src]);
        if (j.at("arrows").contains(a.label)) {
            const auto& rows = j.at("arrows").at(a.label);
            for (std::size_t r = 0; r < rows.size(); ++r)
                for (std::size_t c = 0; c < rows[r].size(); ++c)
                    mat(r, c) = parse_rational(rows[r][c].get<std::string>());
        }
        m.maps.push_back(std::move(mat));
    }
    validate(q, m);
    return m;
}

/// Summand format: {"degree": d, "module": "s0" | "s1" | "sky:<marker>" |
/// {dims, arrows}, "marker"?: string}.
inline CohomologyProfile profile_from_json(const Algebra& q, const json& j)
{
    CohomologyProfile p;
    std::map<std::string, int> marker_ids;
    auto sky_param = [&](const std::string& marker) {
        auto [it, fresh] = marker_ids.emplace(marker, marker_ids.size());
        return Rat(it->second);
    };
    for (const auto& e : j) {
        int degree = e.at("degree").get<int>();
        std::optional<std::string> marker;
        if (e.contains("marker"))
            marker = e.at("marker").get<std::string>();
        Representation m;
        const auto& mod = e.at("module");
        if (mod.is_string()) {
            std::string s = mod.get<std::string>();
            if (s == "s0")
                m = simple(q, 0);
            else if (s == "s1")
                m = simple(q, 1);
            else if (s.rfind("sky:", 0) == 0) {
                std::string name = s.substr(4);
                m = skyscraper(q, sky_param(name));
                if (!marker)
                    marker = name;
            } else
                throw std::invalid_argument("unknown module name: " + s);
        } else {
            m = rep_from_json(q, mod);
        }
        p.summands.push_back(ProfileSummand::make(degree, std::move(m), std::move(marker)));
    }
    return p;
}

inline json profile_json(const Algebra& q, const CohomologyProfile& p)
{
    json arr = json::array();
    for (const auto& s : p.summands) {
        json e = {{"degree", s.degree},
                  {"module", rep_json(q, s.module)},
                  {"class", json_of(s.cls)}};
        if (s.marker)
            e["marker"] = *s.marker;
        arr.push_back(std::move(e));
    }
    return arr;
}

inline Algebra algebra_from_json(const json& j)
{
    Algebra q;
    q.name = j.at("name").get<std::string>();
    q.vertices = j.value("vertices", 2);
    q.cy_dim = j.at("cy_dim").get<int>();
    if (q.vertices != 2)
        throw std::invalid_argument("only two-vertex algebras are supported");
    for (const auto& a : j.at("arrows"))
        q.arrows.push_back({a.at("src").get<int>(), a.at("dst").get<int>(),
                            a.at("label").get<std::string>()});
    for (const auto& r : j.at("relations")) {
        Relation rel;
        rel.label = r.at("label").get<std::string>();
        rel.src = r.at("src").get<int>();
        rel.dst = r.at("dst").get<int>();
        for (const auto& t : r.at("terms")) {
            PathTerm term;
            term.coeff = parse_rational(t.at("coeff").get<std::string>());
            for (const auto& lbl : t.at("path"))
                term.arrows.push_back(q.arrow_index(lbl.get<std::string>()));
            rel.terms.push_back(std::move(term));
        }
        q.relations.push_back(std::move(rel));
    }
    if (j.contains("relation_for_arrow"))
        for (const auto& x : j.at("relation_for_arrow"))
            q.relation_for_arrow.push_back(x.get<int>());
    return q;
}

inline json algebra_json(const Algebra& q)
{
    json arrows = json::array();
    for (const auto& a : q.arrows)
        arrows.push_back({{"src", a.src}, {"dst", a.dst}, {"label", a.label}});
    json rels = json::array();
    for (const auto& r : q.relations) {
        json terms = json::array();
        for (const auto& t : r.terms) {
            json path = json::array();
            for (int a : t.arrows)
                path.push_back(q.arrows[a].label);
            terms.push_back({{"coeff", to_string(t.coeff)}, {"path", path}});
        }
        rels.push_back({{"label", r.label}, {"src", r.src}, {"dst", r.dst}, {"terms", terms}});
    }
    json out = {{"schema_version", kSchemaVersion},
                {"name", q.name},
                {"vertices", q.vertices},
                {"cy_dim", q.cy_dim},
                {"arrows", arrows},
                {"relations", rels}};
    if (!q.relation_for_arrow.empty())
        out["relation_for_arrow"] = q.relation_for_arrow;
    return out;
}

} // namespace helix
