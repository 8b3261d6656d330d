#ifndef LNE_NASH_HPP
#define LNE_NASH_HPP

#include <map>
#include <string>
#include <vector>

#include "lne/certificate.hpp"
#include "lne/cycles.hpp"
#include "lne/graph.hpp"
#include "lne/metric.hpp"

// Refinement until the resolution factors through the Nash transform. An
// edge has to be blown up exactly when the rate gap between its endpoints is
// smaller than the edge length; each qualifying original edge contains one
// new vertex position reached by finitely many double-point blowups. After
// refinement the p-nodes admit a purely combinatorial characterization
// (l_v > 1 or at least two incoming edges) which must match the sign pattern
// of the p-vector.

namespace lne {

// Position of a created vertex on an edge of the input graph: distance t
// from the first endpoint of that edge in input order, 0 < t < length.
struct EdgePosition {
    std::string parent_edge;
    Rat t;
};

struct RefinedGraph {
    WeightedGraph graph;
    CycleData cycles;
    RateAssignment rates;
    std::vector<Int> p_vec;
    std::vector<int> p_node_indices;                // ascending vertex indices
    std::map<std::string, EdgePosition> provenance; // created vertex -> position
    int blowups_performed = 0;
};

// Number of incident edges whose far endpoint has strictly smaller rate;
// parallel edges count separately.
int incoming_edge_count(const WeightedGraph& g, const std::vector<Rat>& rates, int v);

// {v : l_v > 1 or incoming_edge_count(v) >= 2} on a refined graph,
// cross-checked against {v : p_v > 0}. The two characterizations coincide
// whenever the germ is LNE, so disagreement is returned as a certificate.
Result<std::vector<int>> p_nodes(const WeightedGraph& g, const CycleData& data,
                                 const std::vector<Rat>& rates, const std::vector<Int>& p_vec);

// true iff |q_v - q_w| < 1 / lcm(m_v, m_w).
bool edge_needs_blowup(const Rat& q_v, const Int& m_v, const Rat& q_w, const Int& m_w);

// Rate of the interior p-node over a qualifying edge: (d + q_v + q_w) / 2,
// strictly above both endpoint rates.
Rat interior_p_node_rate(const Rat& q_v, const Rat& q_w, const Rat& d);

// Repeatedly blows up the lowest-index qualifying edge, recomputing
// multiplicities by the blowup rule and rates globally, until every edge is
// tight. Default cap 10000 blowups, overridable via LNE_BLOWUP_CAP; hitting
// the cap raises internal_error. Vertices of positive genus must end up
// p-nodes, otherwise a certificate is returned.
Result<RefinedGraph> nash_refine(const WeightedGraph& g, const CycleData& data,
                                 const RateAssignment& rates);

// Local degree: l_v on arrow vertices, the incoming edge count elsewhere.
Int local_degree(const RefinedGraph& refined, int v);

}  // namespace lne

#endif
