#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pancyclic/report.hpp"

#ifndef PANCYCLIC_VERSION
#define PANCYCLIC_VERSION "0.0.0"
#endif

namespace pancyclic::cli {

enum Exit : int { kPass = 0, kFailure = 1, kUsage = 2, kIncomplete = 3 };

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error("UsageError: " + what) {}
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Graph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

inline EdgeRef parse_edge(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError("edge must be written u,v");
    try {
        return EdgeRef(static_cast<Vertex>(std::stoul(text.substr(0, comma))),
                       static_cast<Vertex>(std::stoul(text.substr(comma + 1))));
    } catch (const std::exception&) {
        throw UsageError("bad edge '" + text + "'");
    }
}

inline SamplePolicy parse_policy(const std::string& text, std::uint64_t seed) {
    if (text == "all") return SamplePolicy::every();
    if (text.rfind("sample:", 0) == 0) {
        try {
            return SamplePolicy::sample(std::stoul(text.substr(7)), seed);
        } catch (const std::exception&) {
        }
    }
    throw UsageError("policy must be all or sample:N, got '" + text + "'");
}

inline Property parse_property(const std::string& name, std::size_t k) {
    if (name == "ep") return Property::edge_pancyclic();
    if (name == "vp") return Property::vertex_pancyclic();
    if (name == "kproper") {
        if (k == 0) throw UsageError("--property kproper needs --k");
        return Property::k_edge_proper(k);
    }
    throw UsageError("unknown property '" + name + "'");
}

inline std::string join(const std::vector<std::string>& args) {
    std::string s;
    for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
    return s;
}

struct Common {
    std::string report;
    bool deterministic = false;
    unsigned jobs = 0;
};

inline void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--report", c.report, "write the JSON run report here");
    sub->add_flag("--deterministic", c.deterministic, "ascending neighbor order, no timings in reports");
    sub->add_option("--jobs", c.jobs, "worker threads (default: PANCYCLIC_JOBS or 1)");
}

struct Outcome {
    int code = kPass;
    json payload;
    json parameters = json::object();
};

/// Runs one command line (without the program name). Human output goes to
/// `out`, diagnostics to `err`; returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pancyclicity toolkit: constructions, cycle witnesses, exhaustive search and bound certificates"};
    app.require_subcommand(1);
    app.set_version_flag("--version", PANCYCLIC_VERSION);
    Common common;

    // construct
    std::string family, out_path, labels_path;
    std::size_t k = 0, t = 0;
    std::uint64_t s = 0, ell = 0;
    auto* construct = app.add_subcommand("construct", "build a graph family");
    construct->add_option("--family", family, "wheel|fan|A|B|D1|D2|fanchain|G1|G|complete|cycle|petersen")->required();
    construct->add_option("--k", k);
    construct->add_option("--t", t);
    construct->add_option("--s", s);
    construct->add_option("--ell", ell);
    construct->add_option("--out", out_path, "output file (.g6, .json or .dot); stdout when absent");
    construct->add_option("--labels", labels_path, "label sidecar JSON for G1/G");
    add_common(construct, common);

    // verify
    std::string in_path, property = "ep";
    bool witnesses = false;
    long budget_ms = 0;
    auto* verify = app.add_subcommand("verify", "check a pancyclicity property");
    verify->add_option("--in", in_path)->required();
    verify->add_option("--property", property, "ep|vp|kproper");
    verify->add_option("--k", k);
    verify->add_flag("--witnesses", witnesses);
    verify->add_option("--budget-ms", budget_ms, "per-search time budget, 0 = none");
    add_common(verify, common);

    // spectrum
    std::string edge_text;
    auto* spectrum = app.add_subcommand("spectrum", "cycle lengths through edges");
    spectrum->add_option("--in", in_path)->required();
    spectrum->add_option("--edge", edge_text, "u,v (all edges when absent)");
    add_common(spectrum, common);

    // witness
    std::size_t length = 0;
    std::string recipe = "any";
    std::uint64_t p = 0;
    bool validate = false;
    auto* witness = app.add_subcommand("witness", "cycle of a given length through an edge of G(s, ell)");
    witness->add_option("--s", s)->required();
    witness->add_option("--ell", ell)->required();
    witness->add_option("--edge", edge_text)->required();
    witness->add_option("--length", length)->required();
    witness->add_option("--recipe", recipe, "any|short|mid|long");
    witness->add_option("--p", p, "lifting exponent for --recipe mid");
    witness->add_option("--budget-ms", budget_ms);
    witness->add_flag("--validate", validate);
    add_common(witness, common);

    // coverage
    std::string edges_policy = "all", lengths_policy = "all";
    std::uint64_t seed = 1;
    auto* coverage_cmd = app.add_subcommand("coverage", "witness every (edge, length) pair of G(s, ell)");
    coverage_cmd->add_option("--s", s)->required();
    coverage_cmd->add_option("--ell", ell)->required();
    coverage_cmd->add_option("--edges", edges_policy, "all|sample:N");
    coverage_cmd->add_option("--lengths", lengths_policy, "all|sample:N");
    coverage_cmd->add_option("--seed", seed);
    coverage_cmd->add_option("--budget-ms", budget_ms, "fallback search budget per pair");
    add_common(coverage_cmd, common);

    // search
    std::size_t n = 0, below = 0;
    bool force = false, no_prune = false;
    auto* search = app.add_subcommand("search", "exhaustive minimum-size search");
    search->add_option("--n", n)->required();
    search->add_option("--property", property, "ep|vp|kproper");
    search->add_option("--k", k);
    search->add_option("--below", below, "certify that no graph with fewer edges has the property");
    search->add_flag("--force", force, "allow n above 11 (may take hours)");
    search->add_flag("--no-degree-prune", no_prune);
    add_common(search, common);

    // bounds
    std::string formula, ell_rule = "ceil";
    bool theorem7 = false;
    unsigned precision = 128, max_precision = 256;
    std::optional<std::uint64_t> ell_explicit;
    auto* bounds = app.add_subcommand("bounds", "bound formulas and the upper-construction certificate");
    bounds->add_option("--formula", formula, "3n2|g-range|5n3|7n4|conj");
    bounds->add_option("--n", n);
    bounds->add_option("--k", k);
    bounds->add_flag("--theorem7", theorem7);
    bounds->add_option("--s", s);
    bounds->add_option("--ell-rule", ell_rule, "floor|ceil");
    bounds->add_option("--ell", ell_explicit);
    bounds->add_option("--precision", precision, "starting precision in bits");
    bounds->add_option("--max-precision", max_precision);
    add_common(bounds, common);

    // audit
    std::string scheme;
    auto* audit = app.add_subcommand("audit", "discharging audit");
    audit->add_option("--in", in_path)->required();
    audit->add_option("--scheme", scheme, "t3|t4")->required();
    add_common(audit, common);

    std::vector<std::string> argv_store{"pancyclic"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForVersion&) {
        out << PANCYCLIC_VERSION << "\n";
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "UsageError: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    const auto t0 = std::chrono::steady_clock::now();
    Outcome oc;
    std::string command;
    try {
        const unsigned jobs = resolve_jobs(common.jobs);
        SearchOptions so;
        so.order = common.deterministic ? NeighborOrder::Ascending : NeighborOrder::DegreeAscending;
        so.budget = std::chrono::milliseconds(budget_ms);

        if (construct->parsed()) {
            command = "construct";
            std::optional<LabeledConstruction> labeled;
            Graph g;
            if (family == "wheel") g = wheel(k);
            else if (family == "fan") g = fan(k);
            else if (family == "A") g = family_A(k);
            else if (family == "B") g = family_B(k);
            else if (family == "D1") g = family_D(k, 1);
            else if (family == "D2") g = family_D(k, 2);
            else if (family == "fanchain") g = fan_chain(k, t);
            else if (family == "complete") g = complete_graph(k);
            else if (family == "cycle") g = cycle_graph(k);
            else if (family == "petersen") g = petersen_graph();
            else if (family == "G1") labeled = base_cycle(s, ell);
            else if (family == "G") labeled = upper_construction(s, ell);
            else throw UsageError("unknown family '" + family + "'");
            if (labeled) g = labeled->graph;
            std::string text;
            if (out_path.size() >= 5 && out_path.substr(out_path.size() - 5) == ".json") text = canonical_dump(to_json(g));
            else if (out_path.size() >= 4 && out_path.substr(out_path.size() - 4) == ".dot") text = to_dot(g);
            else text = to_graph6(g) + "\n";
            if (out_path.empty()) out << text;
            else write_text(out_path, text);
            if (!labels_path.empty()) {
                if (!labeled) throw UsageError("--labels applies to G1 and G only");
                emit_report(labels_json(*labeled), labels_path);
            }
            oc.parameters = {{"family", family}, {"k", k}, {"t", t}, {"s", s}, {"ell", ell}};
            oc.payload = {{"n", g.vertex_count()}, {"e", g.edge_count()}, {"graph6", to_graph6(g)}};
            if (!out_path.empty()) out << family << ": n=" << g.vertex_count() << " e=" << g.edge_count() << "\n";
        } else if (verify->parsed()) {
            command = "verify";
            Graph g = load_graph(in_path);
            Property prop = parse_property(property, k);
            CheckOptions co;
            co.witnesses = witnesses;
            co.jobs = jobs;
            co.search = so;
            auto rep = check_property(g, prop, co);
            oc.parameters = {{"in", in_path}, {"property", prop.name()}, {"budget_ms", budget_ms}};
            oc.payload = to_json(rep);
            out << prop.name() << ": " << to_string(rep.verdict);
            if (rep.first_failure) {
                const auto& f = *rep.first_failure;
                if (f.edge) out << " (first failure: edge " << f.edge->u << "," << f.edge->v;
                else out << " (first failure: vertex " << *f.vertex;
                out << ", length " << f.length << ")";
            }
            out << "\n";
            oc.code = rep.verdict == Verdict::Pass ? kPass : rep.verdict == Verdict::Fail ? kFailure : kIncomplete;
        } else if (spectrum->parsed()) {
            command = "spectrum";
            Graph g = load_graph(in_path);
            std::vector<EdgeRef> es = edge_text.empty() ? g.edges() : std::vector<EdgeRef>{parse_edge(edge_text)};
            json rows = json::array();
            for (const auto& e : es) {
                auto ls = edge_spectrum(g, e);
                rows.push_back({{"edge", edge_json(e)}, {"lengths", ls}});
                out << e.u << "," << e.v << ":";
                for (auto l : ls) out << " " << l;
                out << "\n";
            }
            oc.parameters = {{"in", in_path}};
            oc.payload = {{"spectra", rows}};
        } else if (witness->parsed()) {
            command = "witness";
            auto g = upper_construction(s, ell);
            WitnessEngine engine(g);
            const EdgeRef e = parse_edge(edge_text);
            TaggedWitness w;
            if (recipe == "any") {
                AnyWitnessOptions ao;
                if (budget_ms > 0) ao.fallback_budget = std::chrono::milliseconds(budget_ms);
                w = witness_any(engine, e, length, ao);
            } else if (recipe == "short") {
                w = short_witness(engine, e, length);
            } else if (recipe == "mid") {
                w = mid_witness(engine, e, length, p);
            } else if (recipe == "long") {
                w = long_witness(engine, e, length);
            } else {
                throw UsageError("unknown recipe '" + recipe + "'");
            }
            auto check = validate_witness(g.graph, w.witness, e, length);
            oc.parameters = {{"s", s}, {"ell", ell}, {"edge", edge_json(e)}, {"length", length}, {"recipe", recipe}};
            oc.payload = {{"recipe", to_string(w.recipe)},
                          {"cycle", w.witness.vertices},
                          {"valid", check.pass},
                          {"edge_class", to_string(g.edge_class(e))}};
            out << to_string(w.recipe) << ":";
            for (Vertex v : w.witness.vertices) out << " " << v;
            out << "\n";
            if (validate) out << "validation: " << (check.pass ? "ok" : to_string(check.defect)) << "\n";
            oc.code = check.pass ? kPass : kFailure;
        } else if (coverage_cmd->parsed()) {
            command = "coverage";
            auto g = upper_construction(s, ell);
            WitnessEngine engine(g);
            CoverageOptions co;
            co.edges = parse_policy(edges_policy, seed);
            co.lengths = parse_policy(lengths_policy, seed + 1);
            if (budget_ms > 0) co.budget = std::chrono::milliseconds(budget_ms);
            co.jobs = jobs;
            auto rep = coverage(engine, co);
            oc.parameters = {{"s", s}, {"ell", ell}, {"edges", edges_policy}, {"lengths", lengths_policy},
                             {"seed", seed}, {"budget_ms", co.budget.count()}};
            oc.payload = to_json(rep, g);
            out << "pairs " << rep.pairs << ": recipe " << rep.recipe_witnessed << ", fallback "
                << rep.fallback_witnessed << ", timeout gaps " << rep.gap_timeout << ", proved-absent gaps "
                << rep.gap_absent << ", validation failures " << rep.validation_failures << "\n";
            if (rep.gap_absent > 0 || rep.validation_failures > 0) oc.code = kFailure;
            else if (rep.gap_timeout > 0) {
                oc.code = kIncomplete;
                out << "incomplete: " << rep.gap_timeout << " pairs unresolved after fallback timeouts\n";
            }
        } else if (search->parsed()) {
            command = "search";
            Property prop = parse_property(property, k);
            MinSizeOptions mo;
            mo.prune_min_degree = !no_prune;
            mo.enumeration.force = force;
            mo.enumeration.jobs = jobs;
            oc.parameters = {{"n", n}, {"property", prop.name()}, {"below", below}, {"degree_prune", !no_prune}};
            if (below > 0) {
                auto cert = certify_no_graph_below_report(n, prop, below, mo);
                oc.payload = to_json(cert);
                out << "no " << prop.name() << " graph of order " << n << " with fewer than " << below
                    << " edges: " << (cert.holds ? "certified" : "REFUTED");
                if (cert.counterexample) out << " by " << to_graph6(*cert.counterexample);
                out << "\n";
                oc.code = cert.holds ? kPass : kFailure;
            } else {
                auto res = min_size(n, prop, mo);
                oc.payload = to_json(res);
                if (res.minimum_edges) {
                    out << "minimum size " << *res.minimum_edges << " witness " << to_graph6(*res.witness) << "\n";
                } else {
                    out << "no " << prop.name() << " graph of order " << n << "\n";
                    oc.code = kFailure;
                }
            }
        } else if (bounds->parsed()) {
            command = "bounds";
            if (theorem7) {
                if (s == 0) throw UsageError("--theorem7 needs --s");
                Theorem7Options to;
                to.precision = precision;
                to.max_precision = std::max(max_precision, precision);
                if (ell_explicit) {
                    to.rule = EllRule::Explicit;
                    to.ell = *ell_explicit;
                } else if (ell_rule == "floor") {
                    to.rule = EllRule::Floor;
                } else if (ell_rule == "ceil") {
                    to.rule = EllRule::Ceil;
                } else {
                    throw UsageError("--ell-rule must be floor or ceil");
                }
                auto cert = theorem7_certificate(s, to);
                oc.parameters = {{"s", s}, {"ell_rule", to_string(to.rule)}, {"precision", precision}};
                oc.payload = to_json(cert);
                out << "theorem7 s=" << s << " ell=" << cert.ell << ": " << to_string(cert.overall) << "\n";
                for (const auto& st : cert.steps) {
                    out << "  (" << st.id << ") " << st.inequality << ": " << to_string(st.verdict)
                        << (st.informational ? " [informational]" : "") << "\n";
                }
                oc.code = cert.overall == StepVerdict::Pass ? kPass
                          : cert.overall == StepVerdict::Fail ? kFailure
                                                               : kIncomplete;
            } else {
                auto kind = parse_bound_kind(formula);
                if (!kind) throw UsageError("unknown formula '" + formula + "'");
                if (n == 0) throw UsageError("--formula needs --n");
                auto v = lower_bound(n, *kind, k);
                oc.parameters = {{"formula", formula}, {"n", n}, {"k", k}};
                oc.payload = {{"value", v.get_str()}};
                out << v.get_str() << "\n";
            }
        } else if (audit->parsed()) {
            command = "audit";
            Graph g = load_graph(in_path);
            DischargeReport rep;
            if (scheme == "t3") rep = discharge_audit_t3(g);
            else if (scheme == "t4") rep = discharge_audit_t4(g);
            else throw UsageError("--scheme must be t3 or t4");
            oc.parameters = {{"in", in_path}, {"scheme", scheme}};
            oc.payload = to_json(rep);
            if (rep.failure) {
                out << scheme << ": failure: " << rep.failure->reason << " at";
                for (auto v : rep.failure->vertices) out << " " << v;
                out << "\n";
            } else {
                out << scheme << ": min f1 = " << to_string(rep.min_f1) << ", conservation "
                    << (rep.conservation ? "holds" : "BROKEN");
                for (const auto& th : rep.thresholds) out << ", >= " << th.threshold << " " << (th.pass ? "pass" : "FAIL");
                out << "\n";
            }
            oc.code = rep.verdict ? kPass : kFailure;
        }
    } catch (const UsageError& e) {
        err << e.what() << "\n";
        return kUsage;
    } catch (const IoError& e) {
        err << e.what() << "\n";
        return kUsage;
    } catch (const WitnessError& e) {
        err << e.what() << "\n";
        switch (e.code()) {
        case WitnessErrc::Gap: return kIncomplete;
        case WitnessErrc::Counterexample:
        case WitnessErrc::RangeUnsatisfiable:
        case WitnessErrc::RecipeInapplicable:
        case WitnessErrc::NoSuchPath: return kFailure;
        default: return kUsage;
        }
    } catch (const std::exception& e) {
        // Parameter errors from the library (bad sizes, missing edges, caps).
        err << e.what() << "\n";
        return kUsage;
    }

    if (!common.report.empty()) {
        json run;
        run["command"] = command;
        run["argv"] = args;
        run["tool_version"] = PANCYCLIC_VERSION;
        run["parameters"] = oc.parameters;
        run["outcome"] = oc.payload;
        run["exit_code"] = oc.code;
        if (!common.deterministic) {
            run["wall_time_ms"] =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        }
        try {
            emit_report(run, common.report);
        } catch (const IoError& e) {
            err << e.what() << "\n";
            return kUsage;
        }
    }
    return oc.code;
}

}  // namespace pancyclic::cli
