#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pancyclic/constructions.hpp"
#include "pancyclic/graph.hpp"
#include "pancyclic/graph_io.hpp"

using namespace pancyclic;

namespace {

GraphErrc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const GraphError& e) {
        return e.code();
    }
    ADD_FAILURE() << "no GraphError thrown";
    return GraphErrc::EmptySet;
}

}  // namespace

TEST(BuildGraph, Triangle) {
    Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    EXPECT_EQ(g.vertex_count(), 3u);
    EXPECT_EQ(g.edge_count(), 3u);
    EXPECT_TRUE(g.check_invariants());
}

TEST(BuildGraph, RejectsLoopsDuplicatesAndRange) {
    EXPECT_EQ(code_of([] { Graph::from_edges(4, {{0, 0}}); }), GraphErrc::LoopEdge);
    EXPECT_EQ(code_of([] { Graph::from_edges(4, {{0, 1}, {0, 1}}); }), GraphErrc::DuplicateEdge);
    EXPECT_EQ(code_of([] { Graph::from_edges(4, {{0, 1}, {1, 0}}); }), GraphErrc::DuplicateEdge);
    EXPECT_EQ(code_of([] { Graph::from_edges(4, {{0, 4}}); }), GraphErrc::IndexOutOfRange);
}

TEST(Contraction, CycleShrinks) {
    Graph c4 = cycle_graph(4);
    for (const auto& e : c4.edges()) {
        Graph h = contract_edge(c4, e);
        EXPECT_EQ(h.vertex_count(), 3u);
        EXPECT_EQ(h.edge_count(), 3u);
    }
    Graph k3 = complete_graph(3);
    Graph h = contract_edge(k3, EdgeRef(0, 2));
    EXPECT_EQ(h.vertex_count(), 2u);
    EXPECT_EQ(h.edge_count(), 1u);
}

TEST(Contraction, KeepsLowerIndexAndFillsGap) {
    // path 0-1-2-3-4; contracting 1-2 keeps 1, and 4 moves into slot 2
    Graph p = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    Graph h = contract_edge(p, EdgeRef(1, 2));
    EXPECT_EQ(h.vertex_count(), 4u);
    EXPECT_TRUE(h.has_edge(0, 1));
    EXPECT_TRUE(h.has_edge(1, 3));
    EXPECT_TRUE(h.has_edge(3, 2));
    EXPECT_EQ(h.edge_count(), 3u);
}

TEST(Contraction, MissingEdge) {
    EXPECT_EQ(code_of([] { contract_edge(cycle_graph(5), EdgeRef(0, 2)); }), GraphErrc::MissingEdge);
}

TEST(Contraction, Sets) {
    Graph k4 = complete_graph(4);
    Graph all = contract_set(k4, {0, 1, 2, 3});
    EXPECT_EQ(all.vertex_count(), 1u);
    EXPECT_EQ(all.edge_count(), 0u);
    Graph tri = contract_set(k4, {0, 1, 2});
    EXPECT_EQ(tri.vertex_count(), 2u);
    EXPECT_EQ(tri.edge_count(), 1u);
    EXPECT_EQ(code_of([] { contract_set(cycle_graph(6), {0, 3}); }), GraphErrc::DisconnectedSet);
}

TEST(Contraction, EdgeCountNeverGrows) {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 200; ++it) {
        Graph g = oracle::random_graph(8, 0.4, rng);
        for (const auto& e : g.edges()) {
            Graph h = contract_edge(g, e);
            EXPECT_EQ(h.vertex_count(), g.vertex_count() - 1);
            EXPECT_LE(h.edge_count(), g.edge_count() - 1);
            EXPECT_TRUE(h.check_invariants());
        }
    }
}

TEST(DegreeClasses, Examples) {
    auto k4 = degree_classes(complete_graph(4));
    EXPECT_EQ(k4.v3.size(), 4u);
    EXPECT_TRUE(k4.v4plus.empty());
    auto w6 = degree_classes(wheel(6));
    EXPECT_EQ(w6.v3.size(), 5u);
    EXPECT_EQ(w6.v4plus.size(), 1u);
    EXPECT_EQ(code_of([] { degree_classes(cycle_graph(5)); }), GraphErrc::MinDegreeTooLow);
}

TEST(Graph6, KnownEncodings) {
    EXPECT_EQ(to_graph6(complete_graph(4)), "C~");
    EXPECT_EQ(to_graph6(Graph::from_edges(1, std::vector<EdgeRef>{})), "@");
}

TEST(Graph6, RoundTripRandom) {
    std::mt19937_64 rng(11);
    for (std::size_t n : {0u, 1u, 2u, 5u, 13u, 62u, 63u, 64u, 100u}) {
        for (int it = 0; it < 5; ++it) {
            Graph g = oracle::random_graph(n, 0.3, rng);
            EXPECT_EQ(from_graph6(to_graph6(g)), g) << "n=" << n;
        }
    }
}

TEST(Graph6, Malformed) {
    EXPECT_EQ(code_of([] { from_graph6("C"); }), GraphErrc::MalformedGraph6);
    EXPECT_EQ(code_of([] { from_graph6("C\x01"); }), GraphErrc::MalformedGraph6);
}

TEST(GraphJson, RoundTripAndParseGraph) {
    Graph g = wheel(7);
    EXPECT_EQ(graph_from_json(to_json(g)), g);
    EXPECT_EQ(parse_graph(to_json(g).dump()), g);
    EXPECT_EQ(parse_graph(to_graph6(g) + "\n"), g);
    EXPECT_EQ(code_of([] { parse_graph("{\"n\": 3}"); }), GraphErrc::MalformedJson);
}
