#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pancyclic/constructions.hpp"
#include "pancyclic/witness.hpp"

using namespace pancyclic;

namespace {

WitnessErrc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const WitnessError& e) {
        return e.code();
    }
    ADD_FAILURE() << "no WitnessError thrown";
    return WitnessErrc::Gap;
}

const LabeledConstruction& g22() {
    static const LabeledConstruction g = upper_construction(2, 2);
    return g;
}

const WitnessEngine& engine22() {
    static const WitnessEngine e(g22());
    return e;
}

EdgeRef e4_edge(const LabeledConstruction& g, E4Role role) {
    for (const auto& e : g.edge_list())
        if (auto info = g.e4_info(e); info && info->role == role) return e;
    throw std::logic_error("no such E4 edge");
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

TEST(BlockPath, ShortestIsTheFourVertexPath) {
    const auto& g = g22();
    auto p = block_path(g, 1, 3);
    EXPECT_EQ(p.vertices, (std::vector<Vertex>{g.vertex(1, 1), g.vertex(1, 100), g.vertex(1, 101), g.vertex(1, 200)}));
    EXPECT_EQ(p.length(), 3u);
}

TEST(BlockPath, EveryLengthIsASimplePath) {
    const auto& g = g22();
    for (std::int64_t i = 1; i <= 4; ++i) {
        for (std::size_t t = 3; t <= 199; ++t) {
            auto p = engine22().block_path(i, t, std::nullopt);
            ASSERT_EQ(p.length(), t);
            EXPECT_EQ(p.vertices.front(), g.vertex(i, 1));
            EXPECT_EQ(p.vertices.back(), g.vertex(i, 200));
            std::set<Vertex> distinct(p.vertices.begin(), p.vertices.end());
            EXPECT_EQ(distinct.size(), p.vertices.size());
            for (std::size_t x = 0; x + 1 < p.vertices.size(); ++x) EXPECT_TRUE(g.graph.has_edge(p.vertices[x], p.vertices[x + 1]));
        }
    }
}

TEST(BlockPath, HamiltonPathAndRequiredEdge) {
    const auto& g = g22();
    auto h = block_path(g, 2, 199);
    std::set<Vertex> distinct(h.vertices.begin(), h.vertices.end());
    EXPECT_EQ(distinct.size(), 200u);
    const EdgeRef req(g.vertex(2, 10), g.vertex(2, 11));
    auto p = block_path(g, 2, 60, req);
    EXPECT_EQ(p.length(), 60u);
    bool hit = false;
    for (std::size_t x = 0; x + 1 < p.vertices.size(); ++x) hit = hit || EdgeRef(p.vertices[x], p.vertices[x + 1]) == req;
    EXPECT_TRUE(hit);
}

TEST(BlockPath, Errors) {
    EXPECT_EQ(code_of([] { block_path(g22(), 1, 2); }), WitnessErrc::LengthOutOfRange);
    EXPECT_EQ(code_of([] { block_path(g22(), 1, 200); }), WitnessErrc::LengthOutOfRange);
    EXPECT_EQ(code_of([] { block_path(g22(), 1, 10, EdgeRef(g22().vertex(2, 5), g22().vertex(2, 6))); }),
              WitnessErrc::EdgeNotInBlock);
    EXPECT_EQ(code_of([] { WitnessEngine e(base_cycle(3, 2)); }), WitnessErrc::WrongConstruction);
}

TEST(LemmaCycle, BaseEdge) {
    auto g1 = base_cycle(3, 2);
    auto w = lemma_cycle(g1, EdgeRef(0, 1), 1);
    EXPECT_EQ(w.vertices, (std::vector<Vertex>{8, 0, 1, 2}));
    EXPECT_EQ(chord_count(g1, w), 1u);
}

TEST(LemmaCycle, ChordCases) {
    auto g1 = base_cycle(3, 3);
    auto a = lemma_cycle(g1, EdgeRef(2, 5), 2);
    EXPECT_EQ(a.length(), 8u);
    EXPECT_EQ(chord_count(g1, a), 2u);
    EXPECT_TRUE(validate_witness(g1.graph, a, EdgeRef(2, 5), 8).pass);
    auto b = lemma_cycle(g1, EdgeRef(8, 17), 1);
    EXPECT_EQ(b.length(), 6u);
    EXPECT_EQ(chord_count(g1, b), 3u);
    EXPECT_TRUE(validate_witness(g1.graph, b, EdgeRef(8, 17), 6).pass);
}

TEST(LemmaCycle, EveryEdgeEveryExponent) {
    for (auto [s, ell] : {std::pair<std::uint64_t, std::uint64_t>{3, 2}, {4, 2}, {3, 3}, {4, 3}}) {
        auto g1 = base_cycle(s, ell);
        for (const auto& e : g1.edge_list()) {
            for (std::uint64_t p = 1; p < ell; ++p) {
                auto w = lemma_cycle(g1, e, p);
                EXPECT_TRUE(oracle::is_cycle_through(g1.graph, w.vertices, w.length(), e));
                EXPECT_GE(w.length(), ipow(s, p) - ipow(s, p - 1));
                EXPECT_LE(w.length(), ipow(s, p) + 3);
                EXPECT_LE(chord_count(g1, w), 3u);
            }
        }
    }
}

TEST(LemmaCycle, Errors) {
    auto g1 = base_cycle(3, 2);
    EXPECT_EQ(code_of([&] { lemma_cycle(g1, EdgeRef(0, 1), 0); }), WitnessErrc::ParamOutOfRange);
    EXPECT_EQ(code_of([&] { lemma_cycle(g1, EdgeRef(0, 1), 2); }), WitnessErrc::ParamOutOfRange);
    EXPECT_EQ(code_of([&] { lemma_cycle(g1, EdgeRef(0, 4), 1); }), WitnessErrc::MissingEdge);
}

TEST(ShortWitness, ChordTriangles) {
    const auto& g = g22();
    for (E4Role role : {E4Role::HeadHead, E4Role::CenterCenter, E4Role::BCenterCenter, E4Role::CenterHead}) {
        const EdgeRef e = e4_edge(g, role);
        auto w = short_witness(engine22(), e, 3);
        EXPECT_TRUE(oracle::is_cycle_through(g.graph, w.witness.vertices, 3, e)) << to_string(role);
    }
}

TEST(ShortWitness, WindowTemplateLengths) {
    const auto& g = g22();
    for (std::uint64_t j = 2; j <= 50; ++j) {
        const EdgeRef e(g.vertex(1, j), g.vertex(1, j + 1));
        const std::size_t k = j + 7 * 2 + 2;
        auto w = short_witness(engine22(), e, k);
        EXPECT_TRUE(oracle::is_cycle_through(g.graph, w.witness.vertices, k, e));
    }
}

TEST(ShortWitness, AllShortLengthsOnSampledEdges) {
    const auto& g = g22();
    const auto edges = SamplePolicy::sample(25, 3).apply(g.graph.edges());
    for (const auto& e : edges) {
        for (std::size_t k = 3; k <= 40; ++k) {
            auto w = witness_any(engine22(), e, k);
            EXPECT_TRUE(oracle::is_cycle_through(g.graph, w.witness.vertices, k, e));
        }
    }
    EXPECT_EQ(code_of([&] { short_witness(engine22(), edges.front(), 797); }), WitnessErrc::LengthOutOfRange);
    auto g32 = upper_construction(3, 2);
    WitnessEngine e32(g32);
    EXPECT_EQ(code_of([&] { short_witness(e32, g32.edge_list().front(), 1801); }), WitnessErrc::RecipeInapplicable);
}

TEST(LongWitness, HamiltonAndLowerEnd) {
    const auto& g = g22();
    const EdgeRef e3(g.vertex(3, 7), g.vertex(3, 8));
    auto h = long_witness(engine22(), e3, 796);
    EXPECT_TRUE(oracle::is_cycle_through(g.graph, h.witness.vertices, 796, e3));
    auto lo = long_witness(engine22(), e3, 212);
    EXPECT_TRUE(oracle::is_cycle_through(g.graph, lo.witness.vertices, 212, e3));
    const EdgeRef e4 = e4_edge(g, E4Role::HeadHead);
    EXPECT_EQ(code_of([&] { long_witness(engine22(), e4, 411); }), WitnessErrc::RangeUnsatisfiable);
    auto ok = long_witness(engine22(), e4, 412);
    EXPECT_TRUE(oracle::is_cycle_through(g.graph, ok.witness.vertices, 412, e4));
}

TEST(MidWitness, GatesAndLowerEnd) {
    auto g = upper_construction(3, 2);
    WitnessEngine engine(g);
    const EdgeRef e(g.vertex(1, 3), g.vertex(1, 4));
    EXPECT_EQ(code_of([&] { mid_witness(engine, e, 1000, 0); }), WitnessErrc::ParamOutOfRange);
    EXPECT_EQ(code_of([&] { mid_witness(engine, e, 1000, 2); }), WitnessErrc::ParamOutOfRange);
    const std::size_t k = 3 * 3 + 500 * 3 - 6;
    try {
        auto w = mid_witness(engine, e, k, 1);
        EXPECT_EQ(w.recipe, Recipe::SkeletonLift);
        EXPECT_TRUE(oracle::is_cycle_through(g.graph, w.witness.vertices, k, e));
    } catch (const WitnessError& err) {
        EXPECT_EQ(err.code(), WitnessErrc::RangeUnsatisfiable);
    }
}

TEST(WitnessAny, ExtremeLengths) {
    const auto& g = g22();
    for (const auto& e : SamplePolicy::sample(40, 9).apply(g.graph.edges())) {
        for (std::size_t k : {3u, 400u, 795u, 796u}) {
            auto w = witness_any(engine22(), e, k);
            EXPECT_TRUE(validate_witness(g.graph, w.witness, e, k).pass);
            EXPECT_NE(w.recipe, Recipe::Fallback);
        }
    }
    EXPECT_EQ(code_of([] { witness_any(engine22(), g22().edge_list().front(), 797); }), WitnessErrc::LengthOutOfRange);
}

TEST(ValidateWitness, Examples) {
    Graph k4 = complete_graph(4);
    EXPECT_TRUE(validate_witness(k4, CycleWitness{{0, 1, 2}}, EdgeRef(0, 1), 3).pass);
    auto rep = validate_witness(k4, CycleWitness{{0, 1, 1}}, EdgeRef(0, 1), 3);
    EXPECT_FALSE(rep.pass);
    EXPECT_EQ(rep.defect, WitnessDefect::Repeated);
    auto adj = validate_witness(cycle_graph(5), CycleWitness{{0, 1, 3}}, EdgeRef(0, 1), 3);
    EXPECT_FALSE(adj.pass);
    EXPECT_EQ(adj.defect, WitnessDefect::NotAdjacent);
}

TEST(Coverage, SampledRunOnLargerGadget) {
    auto g = upper_construction(3, 2);
    WitnessEngine engine(g);
    CoverageOptions o;
    o.edges = SamplePolicy::sample(12, 4);
    o.lengths = SamplePolicy::sample(150, 4);
    auto rep = coverage(engine, o);
    EXPECT_EQ(rep.pairs, 12u * 150u);
    EXPECT_TRUE(rep.complete());
    EXPECT_EQ(rep.gap_absent, 0u);
    EXPECT_EQ(rep.validation_failures, 0u);
    EXPECT_EQ(rep.recipe_witnessed + rep.fallback_witnessed, rep.pairs);
}

TEST(Coverage, EmptyPolicyAndDeterminism) {
    CoverageOptions none;
    none.edges = SamplePolicy::none();
    auto empty = coverage(engine22(), none);
    EXPECT_EQ(empty.pairs, 0u);
    EXPECT_TRUE(empty.complete());

    CoverageOptions a;
    a.edges = SamplePolicy::sample(30, 8);
    a.jobs = 1;
    CoverageOptions b = a;
    b.jobs = 3;
    auto ra = coverage(engine22(), a);
    auto rb = coverage(engine22(), b);
    EXPECT_EQ(ra.by_recipe, rb.by_recipe);
    EXPECT_EQ(ra.pairs, 30u * 794u);
    EXPECT_EQ(ra.recipe_witnessed, ra.pairs);
}
