#ifndef LNE_METRIC_HPP
#define LNE_METRIC_HPP

#include <vector>

#include "lne/certificate.hpp"
#include "lne/cycles.hpp"
#include "lne/graph.hpp"

// The graph metric and inner rates. An edge joining vertices of
// multiplicities m_v and m_w has length 1 / lcm(m_v, m_w); the inner rate of
// a vertex is its distance to the arrow-carrying vertices plus one. The
// p-vector comes from a closed-form intersection expression and doubles as a
// normal-embeddedness test: entries must be non-negative integers.

namespace lne {

struct RateAssignment {
    std::vector<Int> multiplicities;
    std::vector<Rat> rates;  // q_v >= 1, with equality exactly on the l_nodes
};

// Per-vertex pieces of the Laplacian identity I * A = K + L - P, where
// A_v = m_v q_v and K_v = valency(v) + 2 g(v) - 2.
struct LaplacianVectors {
    std::vector<Rat> a;
    std::vector<Int> k;
    std::vector<Int> l;
    std::vector<Int> p;
};

Rat edge_length(const Int& m_v, const Int& m_w);

// Exact multi-source shortest-path distances under edge_length weights.
// Priority-queue relaxation with ties broken by vertex index, so results and
// traversal order are reproducible.
std::vector<Rat> distance_to_set(const WeightedGraph& g, const std::vector<Int>& m,
                                 const std::vector<int>& sources);

RateAssignment inner_rates(const WeightedGraph& g, const CycleData& data);

// p_v = -E_v . (sum_v' (m_v' q_v' - 1) E_v' - (Z_Gamma - Z_min)), evaluated
// exactly. Non-integral or negative entries are evidence against normal
// embeddedness and produce a certificate. (The arrow-vertex simplification
// 2 (g(v) + l_v - 1) only binds once every edge is tight; nash_refine
// asserts it there.)
Result<std::vector<Int>> p_vector(const WeightedGraph& g, const CycleData& data,
                                  const RateAssignment& rates);

// I * A - (K + L - P). Identically zero whenever cycles, rates and p-vector
// were computed consistently; used as a cross-check, never as a solver.
std::vector<Rat> laplacian_residual(const WeightedGraph& g, const LaplacianVectors& v);

LaplacianVectors laplacian_vectors(const WeightedGraph& g, const CycleData& data,
                                   const RateAssignment& rates, const std::vector<Int>& p);

}  // namespace lne

#endif
