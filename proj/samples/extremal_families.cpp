// Builds the small extremal families and prints their sizes next to the
// matching lower bound, with the property verdict.

#include <cstdio>

#include "pancyclic.hpp"

using namespace pancyclic;

int main() {
    std::printf("%-10s %4s %4s %6s  %s\n", "graph", "n", "e", "bound", "verdict");
    for (std::size_t k = 2; k <= 4; ++k) {
        Graph g = family_A(k);
        auto rep = is_k_edge_proper(g, 3);
        std::printf("A(%zu)%6s %4zu %4zu %6s  %s\n", k, "", g.vertex_count(), g.edge_count(),
                    lower_bound(g.vertex_count(), BoundKind::FiveThirds).get_str().c_str(), to_string(rep.verdict));
    }
    for (std::size_t t = 3; t <= 5; ++t) {
        Graph g = fan_chain(4, t);
        auto rep = is_k_edge_proper(g, 4);
        std::printf("chain(%zu)%2s %4zu %4zu %6s  %s\n", t, "", g.vertex_count(), g.edge_count(),
                    lower_bound(g.vertex_count(), BoundKind::SevenFourths).get_str().c_str(), to_string(rep.verdict));
    }
    for (std::size_t n = 5; n <= 8; ++n) {
        Graph g = wheel(n);
        auto rep = is_edge_pancyclic(g);
        std::printf("W%-9zu %4zu %4zu %6s  %s\n", n, g.vertex_count(), g.edge_count(),
                    lower_bound(n, BoundKind::FLower).get_str().c_str(), to_string(rep.verdict));
    }
}
