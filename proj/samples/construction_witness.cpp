// Pulls explicit cycles out of the large construction G(s, ell): a Hamilton
// cycle, a short cycle and a mid-range one, all through one chord edge.

#include <cstdlib>
#include <iostream>

#include "pancyclic.hpp"

using namespace pancyclic;

int main(int argc, char** argv) {
    const std::uint64_t s = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2;
    const std::uint64_t ell = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 2;
    auto g = upper_construction(s, ell);
    WitnessEngine engine(g);
    std::cout << "G(" << s << "," << ell << "): n=" << g.graph.vertex_count() << " e=" << g.graph.edge_count() << "\n";

    EdgeRef chord_edge;
    for (const auto& e : g.edge_list()) {
        if (g.edge_class(e) == EdgeClass::E4) {
            chord_edge = e;
            break;
        }
    }
    const std::size_t n = g.graph.vertex_count();
    for (std::size_t k : {std::size_t{3}, std::size_t{5}, n / 2, n - 1, n}) {
        auto w = witness_any(engine, chord_edge, k);
        auto check = validate_witness(g.graph, w.witness, chord_edge, k);
        std::cout << "edge " << chord_edge.u << "," << chord_edge.v << " length " << k << ": " << to_string(w.recipe)
                  << (check.pass ? " (valid)" : " (INVALID)") << "\n";
    }
}
