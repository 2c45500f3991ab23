#include <gtest/gtest.h>

#include "pancyclic/constructions.hpp"

using namespace pancyclic;

namespace {

ConstructionErrc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ConstructionError& e) {
        return e.code();
    }
    ADD_FAILURE() << "no ConstructionError thrown";
    return ConstructionErrc::TooLarge;
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

TEST(Families, Wheel) {
    Graph w6 = wheel(6);
    EXPECT_EQ(w6.vertex_count(), 6u);
    EXPECT_EQ(w6.edge_count(), 10u);
    EXPECT_EQ(wheel(4), complete_graph(4));
    EXPECT_EQ(code_of([] { wheel(3); }), ConstructionErrc::ParamTooSmall);
}

TEST(Families, Fan) {
    EXPECT_EQ(fan(5).vertex_count(), 5u);
    EXPECT_EQ(fan(5).edge_count(), 7u);
    EXPECT_EQ(fan(3).edge_count(), 3u);
    EXPECT_EQ(code_of([] { fan(2); }), ConstructionErrc::ParamTooSmall);
}

TEST(Families, ExtremalSizes) {
    EXPECT_EQ(family_A(2).vertex_count(), 6u);
    EXPECT_EQ(family_A(2).edge_count(), 10u);
    EXPECT_EQ(family_B(2).vertex_count(), 7u);
    EXPECT_EQ(family_B(2).edge_count(), 12u);
    for (int v : {1, 2}) {
        EXPECT_EQ(family_D(2, v).vertex_count(), 8u);
        EXPECT_EQ(family_D(2, v).edge_count(), 14u);
    }
    for (std::size_t k = 2; k <= 8; ++k) {
        for (const Graph& g : {family_A(k), family_B(k), family_D(k, 1), family_D(k, 2)}) {
            EXPECT_EQ(g.edge_count(), ceil_div(5 * g.vertex_count(), 3));
            EXPECT_GE(g.min_degree(), 3u);
            EXPECT_TRUE(g.is_connected());
        }
        EXPECT_EQ(family_A(k).vertex_count(), 3 * k);
        EXPECT_EQ(family_B(k).vertex_count(), 3 * k + 1);
        EXPECT_EQ(family_D(k, 1).vertex_count(), 3 * k + 2);
    }
    EXPECT_EQ(code_of([] { family_A(1); }), ConstructionErrc::ParamTooSmall);
    EXPECT_EQ(code_of([] { family_D(3, 3); }), ConstructionErrc::ParamTooSmall);
}

TEST(Families, FanChain) {
    EXPECT_EQ(fan_chain(4, 3).vertex_count(), 12u);
    EXPECT_EQ(fan_chain(4, 3).edge_count(), 21u);
    EXPECT_EQ(fan_chain(5, 3).vertex_count(), 18u);
    EXPECT_EQ(fan_chain(5, 3).edge_count(), 33u);
    EXPECT_EQ(code_of([] { fan_chain(4, 2); }), ConstructionErrc::ParamTooSmall);
    for (std::size_t k = 4; k <= 7; ++k) {
        for (std::size_t t = 3; t <= 6; ++t) {
            Graph g = fan_chain(k, t);
            EXPECT_EQ(g.vertex_count(), (2 * k - 4) * t);
            EXPECT_EQ(g.edge_count(), (4 * k - 9) * t);
        }
    }
}

TEST(Skeleton, BaseCycleThreeTwo) {
    auto g1 = base_cycle(3, 2);
    EXPECT_EQ(g1.graph.vertex_count(), 9u);
    EXPECT_EQ(g1.count(EdgeClass::E1), 9u);
    EXPECT_EQ(g1.count(EdgeClass::E2), 3u);
    EXPECT_EQ(g1.graph.edge_count(), 12u);
    // chords v3v6, v6v9, v9v3 with 1-based names
    EXPECT_TRUE(g1.graph.has_edge(2, 5));
    EXPECT_TRUE(g1.graph.has_edge(5, 8));
    EXPECT_TRUE(g1.graph.has_edge(8, 2));
}

TEST(Skeleton, Errors) {
    EXPECT_EQ(code_of([] { base_cycle(2, 1); }), ConstructionErrc::DegenerateCycle);
    EXPECT_EQ(code_of([] { base_cycle(1, 3); }), ConstructionErrc::ParamTooSmall);
    EXPECT_EQ(code_of([] { base_cycle(3, 0); }), ConstructionErrc::ParamTooSmall);
}

TEST(Skeleton, ChordCountFormulaWhenSAtLeastThree) {
    EXPECT_EQ(base_cycle(4, 3).count(EdgeClass::E2), 32u);
    for (std::uint64_t s = 3; s <= 5; ++s) {
        for (std::uint64_t ell = 1; ell <= 4 && ipow(s, ell) <= 700; ++ell) {
            auto g1 = base_cycle(s, ell);
            EXPECT_EQ(g1.count(EdgeClass::E1), ipow(s, ell));
            EXPECT_EQ(g1.count(EdgeClass::E2), (ell - 1) * ipow(s, ell - 1));
            EXPECT_EQ(g1.duplicate_chords, 0u);
        }
    }
}

TEST(Skeleton, TieChordsCollapseWhenSIsTwo) {
    for (std::uint64_t ell = 2; ell <= 6; ++ell) {
        auto g1 = base_cycle(2, ell);
        const std::uint64_t formula = (ell - 1) * ipow(2, ell - 1);
        EXPECT_EQ(g1.count(EdgeClass::E2) + g1.duplicate_chords, formula);
        EXPECT_EQ(g1.duplicate_chords, ipow(2, ell - 1) / 2);
    }
}

TEST(Gadget, Size) {
    for (std::uint64_t s : {2u, 3u, 5u}) {
        Graph h = gadget_H(s);
        EXPECT_EQ(h.vertex_count(), 100 * s);
        EXPECT_EQ(h.edge_count(), 200 * s - 3);
        EXPECT_TRUE(h.is_connected());
    }
}

TEST(UpperConstruction, Sizes) {
    auto g = upper_construction(3, 2);
    EXPECT_EQ(g.graph.vertex_count(), 2691u);
    EXPECT_EQ(g.graph.edge_count(), 5385u);
    auto g22 = upper_construction(2, 2);
    EXPECT_EQ(g22.graph.vertex_count(), 796u);
    // one tie chord collapses at s = 2, so four fewer edges than the closed form
    EXPECT_EQ(g22.graph.edge_count(), 1596u - 4u);
}

TEST(UpperConstruction, CountingIdentityHoldsOnRecount) {
    for (auto [s, ell] : {std::pair<std::uint64_t, std::uint64_t>{2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 2}}) {
        auto g = upper_construction(s, ell);
        const std::size_t v = g.graph.vertex_count();
        EXPECT_EQ(v, (100 * s - 1) * ipow(s, ell));
        EXPECT_EQ(g.count(EdgeClass::E4), 4 * g.recorded_e2);
        EXPECT_EQ(g.graph.edge_count(), 2 * v - g.recorded_e1 + 4 * g.recorded_e2);
        EXPECT_EQ(g.count(EdgeClass::E3), g.recorded_e1 * (200 * s - 3));
    }
}

TEST(UpperConstruction, LabelsAreConsistent) {
    auto g = upper_construction(3, 2);
    for (Vertex v = 0; v < g.graph.vertex_count(); ++v) {
        auto c = g.coord(v);
        EXPECT_EQ(g.vertex(static_cast<std::int64_t>(c.i), c.j), v);
    }
    // the last position of a block is the next block's head
    EXPECT_EQ(g.vertex(9, 300), g.head(1));
    for (const auto& e : g.edge_list()) {
        if (g.edge_class(e) != EdgeClass::E4) EXPECT_FALSE(g.e4_info(e).has_value());
        else EXPECT_TRUE(g.e4_info(e).has_value());
    }
}

TEST(UpperConstruction, Errors) {
    EXPECT_EQ(code_of([] { upper_construction(1, 2); }), ConstructionErrc::ParamTooSmall);
    EXPECT_EQ(code_of([] { upper_construction(2, 1); }), ConstructionErrc::DegenerateCycle);
}
