#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pancyclic/graph.hpp"

namespace pancyclic {

// graph6: N(n) followed by the upper triangle of the adjacency matrix in
// column order (0,1),(0,2),(1,2),(0,3),... packed big-endian into 6-bit
// groups, each group offset by 63.

namespace detail {

inline void g6_put_size(std::string& out, std::uint64_t n) {
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n <= 258047) {
        out.push_back(126);
        for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    } else {
        out.push_back(126);
        out.push_back(126);
        for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    }
}

}  // namespace detail

inline std::string to_graph6(const Graph& g) {
    const std::uint64_t n = g.vertex_count();
    std::string out;
    detail::g6_put_size(out, n);
    int acc = 0, nbits = 0;
    for (Vertex j = 1; j < n; ++j) {
        for (Vertex i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                nbits = 0;
            }
        }
    }
    if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
    return out;
}

inline Graph from_graph6(std::string_view text) {
    auto fail = [](const std::string& why) -> Graph { throw GraphError(GraphErrc::MalformedGraph6, why); };
    if (text.starts_with(">>graph6<<")) text.remove_prefix(10);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
    if (text.empty()) return fail("empty record");
    for (char c : text) {
        auto b = static_cast<unsigned char>(c);
        if (b < 63 || b > 126) return fail("byte " + std::to_string(b) + " outside 63..126");
    }
    std::size_t pos = 0;
    auto byte = [&](std::size_t p) { return static_cast<std::uint64_t>(static_cast<unsigned char>(text[p]) - 63); };
    std::uint64_t n = 0;
    if (byte(0) < 63) {
        n = byte(0);
        pos = 1;
    } else if (text.size() >= 2 && byte(1) < 63) {
        if (text.size() < 4) return fail("truncated size field");
        n = (byte(1) << 12) | (byte(2) << 6) | byte(3);
        pos = 4;
    } else {
        if (text.size() < 8) return fail("truncated size field");
        for (std::size_t p = 2; p < 8; ++p) n = (n << 6) | byte(p);
        pos = 8;
    }
    if (n > 10'000'000) return fail("order too large");
    const std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
    const std::uint64_t expected = (bits + 5) / 6;
    if (text.size() - pos != expected) {
        return fail("expected " + std::to_string(expected) + " data bytes, got " + std::to_string(text.size() - pos));
    }
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::uint64_t k = 0;
    for (Vertex j = 1; j < n; ++j) {
        for (Vertex i = 0; i < j; ++i, ++k) {
            std::uint64_t chunk = byte(pos + k / 6);
            if ((chunk >> (5 - k % 6)) & 1U) edges.emplace_back(i, j);
        }
    }
    if (bits % 6 != 0) {
        std::uint64_t last = byte(text.size() - 1);
        if (last & ((std::uint64_t{1} << (6 - bits % 6)) - 1)) return fail("nonzero padding bits");
    }
    return Graph::from_edges(n, std::span<const std::pair<Vertex, Vertex>>(edges));
}

inline std::string to_dot(const Graph& g, std::string_view name = "G") {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) == 0) os << "  " << v << ";\n";
    }
    for (const auto& e : g.edges()) os << "  " << e.u << " -- " << e.v << ";\n";
    os << "}\n";
    return os.str();
}

inline nlohmann::json to_json(const Graph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
    return {{"n", g.vertex_count()}, {"edges", std::move(edges)}};
}

inline Graph graph_from_json(const nlohmann::json& j) {
    try {
        auto n = j.at("n").get<std::size_t>();
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw GraphError(GraphErrc::MalformedJson, "edge must be [u,v]");
            edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
        }
        return Graph::from_edges(n, std::span<const std::pair<Vertex, Vertex>>(edges));
    } catch (const nlohmann::json::exception& ex) {
        throw GraphError(GraphErrc::MalformedJson, ex.what());
    }
}

/// Accepts either a graph6 record or a JSON adjacency object.
inline Graph parse_graph(std::string_view text) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& ex) {
            throw GraphError(GraphErrc::MalformedJson, ex.what());
        }
        return graph_from_json(j);
    }
    if (first != std::string_view::npos) text.remove_prefix(first);
    auto eol = text.find('\n');
    return from_graph6(text.substr(0, eol));
}

}  // namespace pancyclic
