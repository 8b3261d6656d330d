#ifndef LNE_TESTS_CORPUS_HPP
#define LNE_TESTS_CORPUS_HPP

// The worked examples every module is tested against: the two-vertex A2
// chain, its refinement, and the six-vertex cycle graph of the surface
// x^5 + y^5 + z^5 + xyz = 0.

#include "lne/graph.hpp"

namespace lne::testing {

// Two rational (-2)-curves meeting once.
inline WeightedGraph a2_minimal() {
    WeightedGraph g;
    g.add_vertex("v1", 0, -2);
    g.add_vertex("v2", 0, -2);
    g.add_edge("e0", 0, 1);
    return g;
}

// The A2 chain after one double-point blowup: weights (-3, -1, -3),
// fundamental cycle (1, 2, 1).
inline WeightedGraph a2_refined() {
    WeightedGraph g;
    g.add_vertex("v1", 0, -3);
    g.add_vertex("b0", 0, -1);
    g.add_vertex("v2", 0, -3);
    g.add_edge("e0", 0, 1);
    g.add_edge("e1", 1, 2);
    return g;
}

// Minimal good resolution of x^5 + y^5 + z^5 + xyz = 0: a six-cycle
// alternating three (-3)-vertices v1, v2, v3 (which carry the arrows) and
// three (-2)-vertices w1, w2, w3. Cycle order: v1, w3, v2, w1, v3, w2.
inline WeightedGraph cusp_graph() {
    WeightedGraph g;
    g.add_vertex("v1", 0, -3);
    g.add_vertex("v2", 0, -3);
    g.add_vertex("v3", 0, -3);
    g.add_vertex("w1", 0, -2);
    g.add_vertex("w2", 0, -2);
    g.add_vertex("w3", 0, -2);
    g.add_edge("e0", "v1", "w3");
    g.add_edge("e1", "w3", "v2");
    g.add_edge("e2", "v2", "w1");
    g.add_edge("e3", "w1", "v3");
    g.add_edge("e4", "v3", "w2");
    g.add_edge("e5", "w2", "v1");
    return g;
}

// Chain (-2)-(-3), accepted with l = (1, 2).
inline WeightedGraph chain_23() {
    WeightedGraph g;
    g.add_vertex("v1", 0, -2);
    g.add_vertex("v2", 0, -3);
    g.add_edge("e0", 0, 1);
    return g;
}

inline WeightedGraph single_vertex(long long e = -1, long long genus = 0) {
    WeightedGraph g;
    g.add_vertex("v1", genus, e);
    return g;
}

}  // namespace lne::testing

#endif
