#pragma once

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pancyclic/bounds.hpp"
#include "pancyclic/constructions.hpp"
#include "pancyclic/cycle_search.hpp"
#include "pancyclic/extremal.hpp"
#include "pancyclic/graph_io.hpp"
#include "pancyclic/witness.hpp"

namespace pancyclic {

using json = nlohmann::json;  // std::map-backed: keys are emitted sorted

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error("IoError: " + what) {}
};

inline json edge_json(const EdgeRef& e) { return json::array({e.u, e.v}); }

inline json to_json(const CycleWitness& w) { return w.vertices; }

inline json to_json(const PropertyReport& r) {
    json j;
    j["property"] = r.property.name();
    j["verdict"] = to_string(r.verdict);
    j["search_nodes"] = r.nodes;
    j["tasks"] = r.tasks;
    if (r.first_failure) {
        json f;
        if (r.first_failure->edge) f["edge"] = edge_json(*r.first_failure->edge);
        if (r.first_failure->vertex) f["vertex"] = *r.first_failure->vertex;
        f["length"] = r.first_failure->length;
        j["first_failure"] = f;
    } else {
        j["first_failure"] = nullptr;
    }
    if (!r.edge_witnesses.empty()) {
        json ws = json::array();
        for (const auto& [key, w] : r.edge_witnesses)
            ws.push_back({{"edge", edge_json(key.first)}, {"length", key.second}, {"cycle", w.vertices}});
        j["edge_witnesses"] = ws;
    }
    if (!r.vertex_witnesses.empty()) {
        json ws = json::array();
        for (const auto& [key, w] : r.vertex_witnesses)
            ws.push_back({{"vertex", key.first}, {"length", key.second}, {"cycle", w.vertices}});
        j["vertex_witnesses"] = ws;
    }
    return j;
}

inline json to_json(const SearchOutcome& o) {
    json j;
    j["n"] = o.n;
    j["property"] = o.property.name();
    j["minimum_edges"] = o.minimum_edges ? json(*o.minimum_edges) : json(nullptr);
    j["witness"] = o.witness ? json(to_graph6(*o.witness)) : json(nullptr);
    j["exhausted"] = o.exhausted;
    j["start_edges"] = o.start_edges;
    json counts = json::object();
    for (const auto& [m, c] : o.counts) counts[std::to_string(m)] = c;
    j["classes_per_edge_count"] = counts;
    return j;
}

inline json to_json(const NoGraphCertificate& c) {
    json j;
    j["n"] = c.n;
    j["property"] = c.property.name();
    j["threshold"] = c.threshold;
    j["holds"] = c.holds;
    j["counterexample"] = c.counterexample ? json(to_graph6(*c.counterexample)) : json(nullptr);
    json counts = json::object();
    for (const auto& [m, k] : c.counts) counts[std::to_string(m)] = k;
    j["classes_per_edge_count"] = counts;
    return j;
}

inline json to_json(const CoverageReport& r, const LabeledConstruction& g) {
    json j;
    j["s"] = r.s;
    j["ell"] = r.ell;
    j["edges"] = r.edge_count;
    j["lengths"] = r.length_count;
    j["pairs"] = r.pairs;
    j["recipe_witnessed"] = r.recipe_witnessed;
    j["fallback_witnessed"] = r.fallback_witnessed;
    j["gap_timeout"] = r.gap_timeout;
    j["gap_proved_absent"] = r.gap_absent;
    j["validation_failures"] = r.validation_failures;
    j["complete"] = r.complete();
    j["by_recipe"] = r.by_recipe;
    j["by_edge_class"] = r.by_class;
    json entries = json::array();
    for (const auto& ce : r.non_recipe) {
        entries.push_back({{"edge", edge_json(ce.edge)},
                           {"class", to_string(g.edge_class(ce.edge))},
                           {"length", ce.length},
                           {"status", to_string(ce.outcome)}});
    }
    j["non_recipe"] = entries;
    return j;
}

inline json to_json(const BoundCertificate& c) {
    json j;
    j["identifier"] = c.identifier;
    j["s"] = std::to_string(c.s);
    j["ell"] = std::to_string(c.ell);
    j["ell_rule"] = to_string(c.rule);
    j["n"] = c.n;
    j["e"] = c.e;
    j["overall"] = to_string(c.overall);
    j["first_failure"] = c.first_failure ? json(*c.first_failure) : json(nullptr);
    json steps = json::array();
    for (const auto& st : c.steps) {
        json s{{"id", st.id},
               {"inequality", st.inequality},
               {"left", st.left},
               {"right", st.right},
               {"verdict", to_string(st.verdict)},
               {"informational", st.informational}};
        if (st.precision) {
            s["precision_bits"] = st.precision;
            s["enclosure_width"] = st.width;
        }
        steps.push_back(s);
    }
    j["steps"] = steps;
    return j;
}

inline json to_json(const DischargeReport& r) {
    json j;
    j["scheme"] = r.scheme == Scheme::T3 ? "t3" : "t4";
    j["classes"] = r.classes;
    json f0 = json::array(), f1 = json::array();
    for (const auto& q : r.f0) f0.push_back(to_string(q));
    for (const auto& q : r.f1) f1.push_back(to_string(q));
    j["f0"] = f0;
    j["f1"] = f1;
    j["transfers_ran"] = r.transfers_ran;
    j["verdict"] = r.verdict ? "pass" : "fail";
    if (r.transfers_ran) {
        j["min_f1"] = to_string(r.min_f1);
        j["argmin"] = *r.argmin;
        j["sum_f0"] = to_string(r.sum_f0);
        j["sum_f1"] = to_string(r.sum_f1);
        j["conservation"] = r.conservation;
        json th = json::object();
        for (const auto& t : r.thresholds) th[t.threshold] = t.pass ? "pass" : "fail";
        j["thresholds"] = th;
    }
    if (r.edge_bound_implied) j["edge_bound_12n7"] = *r.edge_bound_implied;
    if (r.failure) j["failure"] = {{"vertices", r.failure->vertices}, {"reason", r.failure->reason}};
    return j;
}

inline json labels_json(const LabeledConstruction& g) {
    json j;
    j["family"] = g.params.family;
    j["s"] = g.s();
    j["ell"] = g.ell();
    j["base_count"] = g.base_count;
    j["duplicate_chords"] = g.duplicate_chords;
    json chords = json::array();
    for (const auto& c : g.chords) chords.push_back({{"from", c.from}, {"to", c.to}, {"exponent", c.exponent}});
    j["chords"] = chords;
    json edges = json::array();
    for (const auto& e : g.edge_list()) {
        json x{{"edge", edge_json(e)}, {"class", to_string(g.edge_class(e))}};
        if (auto info = g.e4_info(e)) {
            x["chord"] = info->chord;
            x["role"] = to_string(info->role);
        }
        edges.push_back(x);
    }
    j["edges"] = edges;
    json coords = json::array();
    for (Vertex v = 0; v < g.graph.vertex_count(); ++v) {
        auto c = g.coord(v);
        coords.push_back({c.i, c.j});
    }
    j["coords"] = coords;
    return j;
}

/// Canonical rendering: sorted keys, two-space indent, trailing newline.
inline std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

inline void write_text(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    const fs::path p(path);
    if (p.has_parent_path() && !fs::is_directory(p.parent_path())) {
        throw IoError("directory does not exist: " + p.parent_path().string());
    }
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot open " + path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

inline void emit_report(const json& report, const std::string& path) { write_text(path, canonical_dump(report)); }

}  // namespace pancyclic
