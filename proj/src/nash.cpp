#include "lne/nash.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace lne {

namespace {

int blowup_cap_from_env() {
    const char* raw = std::getenv("LNE_BLOWUP_CAP");
    if (raw == nullptr || *raw == '\0') return 10000;
    char* end = nullptr;
    const long value = std::strtol(raw, &end, 10);
    if (end == nullptr || *end != '\0' || value <= 0)
        throw std::invalid_argument("LNE_BLOWUP_CAP must be a positive integer");
    return static_cast<int>(value);
}

// Where each live edge sits inside its ancestor edge of the input graph:
// endpoint positions measured from the first endpoint of that ancestor, in
// the metric fixed by the input multiplicities. The subdivision identity
// 1/lcm(a,b) = 1/lcm(a,a+b) + 1/lcm(a+b,b) keeps these consistent.
struct EdgeSpan {
    std::string ancestor;
    Rat pos_a;
    Rat pos_b;
};

}  // namespace

int incoming_edge_count(const WeightedGraph& g, const std::vector<Rat>& rates, int v) {
    int count = 0;
    for (const auto& [e, far] : g.incident(v))
        if (rates[far] < rates[v]) ++count;
    return count;
}

bool edge_needs_blowup(const Rat& q_v, const Int& m_v, const Rat& q_w, const Int& m_w) {
    Rat gap = q_v - q_w;
    if (gap < 0) gap = -gap;
    return gap < edge_length(m_v, m_w);
}

Rat interior_p_node_rate(const Rat& q_v, const Rat& q_w, const Rat& d) {
    Rat gap = q_v - q_w;
    if (gap < 0) gap = -gap;
    if (gap >= d)
        throw std::invalid_argument("interior_p_node_rate: edge is already tight");
    return (d + q_v + q_w) / 2;
}

Result<std::vector<int>> p_nodes(const WeightedGraph& g, const CycleData& data,
                                 const std::vector<Rat>& rates, const std::vector<Int>& p_vec) {
    std::vector<int> combinatorial;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (data.l_vector[v] > 1 || incoming_edge_count(g, rates, v) >= 2)
            combinatorial.push_back(v);

    // The sign pattern of the p-vector is an independent route to the same
    // set. The two agree on every refined graph coming from an actual LNE
    // germ, so a disagreement rules the input out; it is reported as
    // evidence, not as an internal failure, because inputs reaching this
    // point with mismatched sets do exist (a single genus-one vertex with
    // self-intersection -1 is the smallest).
    NotLneCertificate cert;
    cert.stage = "nash";
    for (int v = 0; v < g.vertex_count(); ++v) {
        const bool counted = data.l_vector[v] > 1 || incoming_edge_count(g, rates, v) >= 2;
        const bool positive = p_vec[v] > 0;
        if (counted == positive) continue;
        cert.violations.push_back(
            {g.vertex(v).id, counted ? "central-node count marks a p-node but p = " +
                                           p_vec[v].str()
                                     : "p = " + p_vec[v].str() +
                                           " yet the vertex has neither l > 1 nor two "
                                           "incoming edges"});
    }
    if (!cert.violations.empty())
        return Result<std::vector<int>>::rejected(std::move(cert));
    return Result<std::vector<int>>::accepted(std::move(combinatorial));
}

Result<RefinedGraph> nash_refine(const WeightedGraph& g, const CycleData& data,
                                 const RateAssignment& rates) {
    const int cap = blowup_cap_from_env();

    WeightedGraph work = g;
    std::vector<Int> m = data.multiplicities();
    std::vector<Int> l = data.l_vector;
    std::vector<int> l_nodes = data.l_nodes;
    std::vector<Rat> q = rates.rates;

    std::vector<EdgeSpan> spans;
    spans.reserve(work.edge_count());
    for (const Edge& e : work.edges())
        spans.push_back(EdgeSpan{e.id, Rat(0), edge_length(m[e.a], m[e.b])});

    std::map<std::string, EdgePosition> provenance;
    int serial = 0;
    int blowups = 0;

    for (;;) {
        int target = -1;
        for (int i = 0; i < work.edge_count(); ++i) {
            const Edge& e = work.edge(i);
            if (edge_needs_blowup(q[e.a], m[e.a], q[e.b], m[e.b])) {
                target = i;
                break;
            }
        }
        if (target < 0) break;
        if (blowups >= cap)
            throw internal_error(
                "refinement exceeded the blowup cap (" + std::to_string(cap) + "): " +
                std::to_string(work.vertex_count()) + " vertices, " +
                std::to_string(work.edge_count()) + " edges; raise LNE_BLOWUP_CAP if the "
                "input is legitimate");

        const Edge edge = work.edge(target);
        const EdgeSpan span = spans[target];

        BlowupResult blown = blow_up_double_point(work, m, target, serial++);
        const int w = blown.graph.vertex_count() - 1;

        // Position of the created vertex inside the ancestor edge: one
        // sub-edge length away from endpoint a, in the direction of b.
        const Rat step = edge_length(m[edge.a], blown.multiplicities[w]);
        const Rat pos_w = (span.pos_b > span.pos_a) ? Rat(span.pos_a + step)
                                                    : Rat(span.pos_a - step);
        provenance[blown.new_vertex] = EdgePosition{span.ancestor, pos_w};

        spans.erase(spans.begin() + target);
        spans.push_back(EdgeSpan{span.ancestor, span.pos_a, pos_w});
        spans.push_back(EdgeSpan{span.ancestor, pos_w, span.pos_b});

        work = std::move(blown.graph);
        m = std::move(blown.multiplicities);

        // The extended multiplicity vector must keep the arrow pattern: same
        // l on surviving vertices, zero on the created one.
        std::vector<Int> l_new = l_vector(work, Divisor{m});
        for (int v = 0; v < work.vertex_count() - 1; ++v)
            if (l_new[v] != l[v])
                throw internal_error("blowup changed the arrow count at vertex '" +
                                     work.vertex(v).id + "'");
        if (l_new.back() != 0)
            throw internal_error("created vertex '" + blown.new_vertex +
                                 "' carries arrows after blowup");
        l = std::move(l_new);

        // Rates are recomputed globally from scratch; subdivision never moves
        // distances, so surviving vertices must keep their rates (asserted by
        // the property suite rather than here, where it would be tautological).
        std::vector<Rat> d = distance_to_set(work, m, l_nodes);
        q.clear();
        q.reserve(d.size());
        for (Rat& x : d) q.push_back(x + 1);

        ++blowups;
    }

    for (int i = 0; i < work.edge_count(); ++i) {
        const Edge& e = work.edge(i);
        Rat gap = q[e.a] - q[e.b];
        if (gap < 0) gap = -gap;
        if (gap != edge_length(m[e.a], m[e.b]))
            throw internal_error("edge '" + e.id + "' is not tight after refinement");
    }

    RefinedGraph refined;
    refined.graph = std::move(work);
    refined.cycles.z_min = Divisor{m};
    refined.cycles.l_vector = l;
    for (int v = 0; v < refined.graph.vertex_count(); ++v)
        if (l[v] > 0) refined.cycles.l_nodes.push_back(v);
    if (refined.cycles.l_nodes != l_nodes)
        throw internal_error("arrow vertex set changed during refinement");
    refined.rates.multiplicities = refined.cycles.multiplicities();
    refined.rates.rates = q;
    refined.provenance = std::move(provenance);
    refined.blowups_performed = blowups;

    Result<std::vector<Int>> p = p_vector(refined.graph, refined.cycles, refined.rates);
    if (!p) return Result<RefinedGraph>::rejected(p.certificate());
    refined.p_vec = std::move(p.value());

    // Once every edge is tight the closed form collapses at arrow vertices
    // to 2 (g + l - 1); disagreement there means a computation bug, not a
    // property of the input, so it is not a certificate.
    for (int v : refined.cycles.l_nodes) {
        const Int direct = 2 * (refined.graph.vertex(v).genus + refined.cycles.l_vector[v] - 1);
        if (refined.p_vec[v] != direct)
            throw internal_error("p-vector mismatch at arrow vertex '" +
                                 refined.graph.vertex(v).id + "': formula gives " +
                                 refined.p_vec[v].str() + ", closed form gives " + direct.str());
    }

    Result<std::vector<int>> nodes =
        p_nodes(refined.graph, refined.cycles, refined.rates.rates, refined.p_vec);
    if (!nodes) return Result<RefinedGraph>::rejected(nodes.certificate());
    refined.p_node_indices = std::move(nodes.value());

    // A vertex of positive genus that fails to be a p-node rules the germ out.
    NotLneCertificate cert;
    cert.stage = "nash";
    for (int v = 0; v < refined.graph.vertex_count(); ++v) {
        if (refined.graph.vertex(v).genus <= 0) continue;
        const bool is_p = refined.p_vec[v] > 0;
        if (!is_p)
            cert.violations.push_back({refined.graph.vertex(v).id,
                                       "has genus " + refined.graph.vertex(v).genus.str() +
                                           " but is not a p-node"});
    }
    if (!cert.violations.empty()) return Result<RefinedGraph>::rejected(std::move(cert));

    return Result<RefinedGraph>::accepted(std::move(refined));
}

Int local_degree(const RefinedGraph& refined, int v) {
    const bool is_l_node = refined.cycles.l_vector[v] > 0;
    Int degree = is_l_node
                     ? refined.cycles.l_vector[v]
                     : Int(incoming_edge_count(refined.graph, refined.rates.rates, v));
    const bool is_p_node = refined.p_vec[v] > 0;
    if (is_p_node && degree < 1)
        throw internal_error("local degree " + degree.str() + " at p-node '" +
                             refined.graph.vertex(v).id + "'");
    return degree;
}

}  // namespace lne
