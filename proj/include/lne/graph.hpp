#ifndef LNE_GRAPH_HPP
#define LNE_GRAPH_HPP

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lne/numeric.hpp"

// Weighted dual graphs of good resolutions: vertices carry a genus g(v) >= 0
// and a self-intersection e(v) < 0, edges are first-class objects identified
// by id (multi-edges between the same vertex pair are meaningful, loops are
// not allowed). Divisors are integer vectors indexed by the vertex list, and
// the intersection pairing is the incidence matrix: e(v) on the diagonal and
// the number of connecting edges off it.

namespace lne {

struct Vertex {
    std::string id;
    Int genus;
    Int self_intersection;
};

struct Edge {
    std::string id;
    int a = -1;  // endpoint vertex indices; a != b always
    int b = -1;
};

class WeightedGraph {
public:
    WeightedGraph() = default;

    // Appends a vertex and returns its index. Ids must be unique; insertion
    // order is the canonical vertex order used for every deterministic scan.
    int add_vertex(std::string id, Int genus, Int self_intersection);

    // Appends an edge between two existing vertices; loops are rejected.
    int add_edge(std::string id, int a, int b);
    int add_edge(std::string id, const std::string& a, const std::string& b);

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const Vertex& vertex(int i) const { return vertices_.at(i); }
    Vertex& vertex(int i) { return vertices_.at(i); }
    const Edge& edge(int i) const { return edges_.at(i); }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }

    // Index lookup by id; -1 when absent.
    int index_of(const std::string& id) const;
    bool has_vertex(const std::string& id) const { return index_of(id) >= 0; }

    // Incident (edge index, far endpoint index) pairs in edge-index order.
    // A multi-edge contributes once per parallel copy, so valency counts
    // edge endpoints, not distinct neighbours.
    const std::vector<std::pair<int, int>>& incident(int v) const;
    int valency(int v) const { return static_cast<int>(incident(v).size()); }

    // Number of edges joining u and v (the off-diagonal incidence entry).
    Int edges_between(int u, int v) const;

    bool is_connected() const;

    // Removes the edge at the given index. Later edges shift down by one;
    // used only by the blowup, which appends the two replacement edges.
    void remove_edge(int edge_index);

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, int> index_;
    mutable std::vector<std::vector<std::pair<int, int>>> incident_;
    mutable bool incident_fresh_ = false;

    void refresh_incidence() const;
};

// Integer divisor supported on the vertices of one graph, stored in vertex
// order. The rational variant carries the m_v * q_v vector.
struct Divisor {
    std::vector<Int> coeff;

    static Divisor zero(const WeightedGraph& g);
    static Divisor ones(const WeightedGraph& g);
};

struct ValidationReport {
    bool ok = false;
    std::vector<std::string> problems;
};

// Checks every hypothesis placed on a resolution graph: connectivity, no
// loops, genus >= 0, self-intersections < 0, and negative definiteness of
// the incidence matrix. A graph failing any check never enters the pipeline.
ValidationReport validate_graph(const WeightedGraph& g);

// D1^T I D2 with exact integers; symmetric and bilinear.
Int intersection(const WeightedGraph& g, const Divisor& d1, const Divisor& d2);

// Row v of I * D, that is D . E_v.
Int intersect_with_vertex(const WeightedGraph& g, const Divisor& d, int v);

// Sylvester's criterion with fraction-free (Bareiss) leading minors:
// true iff (-1)^k det_k > 0 for every leading principal minor.
bool is_negative_definite(const WeightedGraph& g);

// Z_Gamma . E_v = -e(v) + 2 g(v) - 2. The canonical cycle itself is rational
// and never materialized; only these pairings are needed.
Int canonical_pairing(const WeightedGraph& g, int v);

// Blows up the double point at the given edge: the edge [v, v'] is replaced
// by a new genus-0 vertex w with e(w) = -1 and edges [v, w], [w, v']; e(v)
// and e(v') each drop by 1 and m(w) = m(v) + m(v'). Returns the new graph,
// the extended multiplicity vector and the new vertex id. New vertices are
// named "b0", "b1", ... by a counter owned by the caller.
struct BlowupResult {
    WeightedGraph graph;
    std::vector<Int> multiplicities;
    std::string new_vertex;
    std::string left_edge;   // id of the created edge [v, w]
    std::string right_edge;  // id of the created edge [w, v']
};

BlowupResult blow_up_double_point(const WeightedGraph& g, const std::vector<Int>& m,
                                  int edge_index, int new_vertex_serial);

}  // namespace lne

#endif
