#pragma once

// JSON emission for quivers, templates, representations and verification
// reports (schema_version 1), JSON parsing for representations, and DOT
// emission for quiver topology.

#include <sstream>
#include <string>

#include <json.hpp>

#include "harness.hpp"

namespace quiversat {

using nlohmann::json;

inline json to_json(const Quiver& q) {
    json arrows = json::array();
    for (const ArrowSpec& a : q.arrows) arrows.push_back({a.source, a.target});
    return json{{"vertices", q.vertex_names}, {"arrows", arrows}};
}

inline json field_to_json(const Field& F) {
    json j{{"p", F.characteristic()}, {"d", F.degree()}};
    if (F.degree() > 1) j["modulus"] = F.modulus();
    return j;
}

inline FieldPtr field_from_json(const json& j) {
    std::vector<std::uint32_t> modulus;
    if (j.contains("modulus")) modulus = j["modulus"].get<std::vector<std::uint32_t>>();
    return Field::make(j["p"].get<std::uint32_t>(), j["d"].get<std::uint32_t>(),
                       std::move(modulus));
}

inline json to_json(const Formula& f) {
    json clauses = json::array();
    for (const Clause& cl : f.clauses) {
        json c = json::array();
        for (const Literal& lit : cl) c.push_back(lit.negated ? -lit.var : lit.var);
        clauses.push_back(c);
    }
    json vars = json::array();
    for (const VarOrigin& v : f.provenance.vars) {
        if (v.original_var > 0)
            vars.push_back({{"original", v.original_var}});
        else if (v.forced.has_value())
            vars.push_back({{"fresh", true}, {"forced", *v.forced}});
        else
            vars.push_back({{"fresh", true}});
    }
    return json{{"num_vars", f.num_vars},
                {"clauses", clauses},
                {"provenance",
                 {{"original_num_vars", f.provenance.original_num_vars},
                  {"deleted_tautologies", f.provenance.deleted_tautologies},
                  {"padded_clauses", f.provenance.padded_clauses},
                  {"vars", vars}}}};
}

inline json to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(static_cast<int>(m(i, j)));
        rows.push_back(row);
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

inline json to_json(const SymbolicMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols; ++j) {
            const SymbolicEntry& e = m(i, j);
            if (e.is_var)
                row.push_back(json{{"x", e.var}});
            else
                row.push_back(static_cast<int>(e.value));
        }
        rows.push_back(row);
    }
    return json{{"rows", m.rows}, {"cols", m.cols}, {"entries", rows}};
}

inline json to_json(const ReductionOutput& t) {
    json maps = json::array();
    for (std::size_t e = 0; e < t.maps.size(); ++e) {
        json m = to_json(t.maps[e]);
        m["source"] = t.quiver->arrows[e].source;
        m["target"] = t.quiver->arrows[e].target;
        maps.push_back(m);
    }
    return json{{"schema_version", 1},
                {"field", t.field->name()},
                {"field_spec", field_to_json(*t.field)},
                {"num_vars", t.num_vars},
                {"num_clauses", t.num_clauses},
                {"blocks", t.blocks},
                {"quiver", to_json(*t.quiver)},
                {"dims", t.dims},
                {"maps", maps}};
}

inline json to_json(const Representation& r) {
    json maps = json::array();
    for (const Matrix& m : r.maps) maps.push_back(to_json(m));
    return json{{"schema_version", 1},
                {"field", field_to_json(*r.field)},
                {"quiver", to_json(*r.quiver)},
                {"dims", r.dims},
                {"maps", maps}};
}

inline Representation representation_from_json(const json& j) {
    Representation r;
    r.field = field_from_json(j.at("field"));
    Quiver q;
    q.vertex_names = j.at("quiver").at("vertices").get<std::vector<std::string>>();
    for (const auto& a : j.at("quiver").at("arrows"))
        q.arrows.push_back({a.at(0).get<int>(), a.at(1).get<int>()});
    r.quiver = std::make_shared<const Quiver>(std::move(q));
    r.dims = j.at("dims").get<std::vector<int>>();
    for (const auto& jm : j.at("maps")) {
        Matrix m(r.field, jm.at("rows").get<std::size_t>(), jm.at("cols").get<std::size_t>());
        const auto& entries = jm.at("entries");
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t c = 0; c < m.cols(); ++c)
                m(i, c) = static_cast<Elt>(entries.at(i).at(c).get<int>());
        r.maps.push_back(std::move(m));
    }
    r.validate();
    return r;
}

inline json to_json(const AssignmentRecord& rec) {
    json j{{"assignment", json::array()},
           {"evaluates", rec.evaluates},
           {"boolean", rec.boolean},
           {"certificate", to_string(rec.certificate)}};
    for (Elt v : rec.assignment) j["assignment"].push_back(static_cast<int>(v));
    if (rec.end_dim) j["end_dim"] = *rec.end_dim;
    if (rec.observational) j["observational"] = true;
    if (rec.witness) j["witness"] = {{"clause", rec.witness->clause + 1},
                                     {"block", rec.witness->block + 1}};
    if (!rec.first_dims.empty())
        j["witness_dims"] = {{"first", rec.first_dims}, {"second", rec.second_dims}};
    if (!rec.note.empty()) j["note"] = rec.note;
    return j;
}

inline json to_json(const VerificationReport& rep) {
    json assignments = json::array();
    for (const auto& rec : rep.assignments) assignments.push_back(to_json(rec));
    json j{{"schema_version", 1},
           {"formula_fingerprint", rep.formula_fingerprint},
           {"formula", to_json(rep.formula)},
           {"field", rep.field},
           {"mode", rep.mode},
           {"assignments", assignments},
           {"tits", {{"gram_value", rep.tits_gram}, {"closed_form", rep.tits_closed_form}}},
           {"root_class", to_string(rep.root_class)},
           {"verdict", rep.pass ? "pass" : "fail"},
           {"timing_ms", rep.elapsed_ms}};
    j["quiver"] = rep.quiver ? to_json(*rep.quiver) : json{{"vertices", json::array()},
                                                           {"arrows", json::array()}};
    return j;
}

inline json to_json(const SatVerdict& v) {
    json j{{"schema_version", 1}, {"satisfiable", v.satisfiable}, {"method", v.method}};
    if (v.witness) {
        json w = json::array();
        for (Elt e : *v.witness) w.push_back(static_cast<int>(e));
        j["witness"] = w;
    }
    return j;
}

/// One node per vertex labeled with its role, one directed edge per arrow.
inline std::string to_dot(const Quiver& q) {
    std::ostringstream out;
    out << "digraph quiver {\n";
    for (const std::string& name : q.vertex_names) out << "  \"" << name << "\";\n";
    for (const ArrowSpec& a : q.arrows)
        out << "  \"" << q.vertex_names[static_cast<std::size_t>(a.source)] << "\" -> \""
            << q.vertex_names[static_cast<std::size_t>(a.target)] << "\";\n";
    out << "}\n";
    return out.str();
}

} // namespace quiversat
