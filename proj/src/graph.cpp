#include "lne/graph.hpp"

#include <algorithm>
#include <stdexcept>

#include "lne/certificate.hpp"

namespace lne {

int WeightedGraph::add_vertex(std::string id, Int genus, Int self_intersection) {
    if (index_.count(id))
        throw std::invalid_argument("duplicate vertex id '" + id + "'");
    const int idx = vertex_count();
    index_.emplace(id, idx);
    vertices_.push_back(Vertex{std::move(id), std::move(genus), std::move(self_intersection)});
    incident_fresh_ = false;
    return idx;
}

int WeightedGraph::add_edge(std::string id, int a, int b) {
    if (a < 0 || a >= vertex_count() || b < 0 || b >= vertex_count())
        throw std::invalid_argument("edge '" + id + "' references an unknown vertex");
    if (a == b)
        throw std::invalid_argument("edge '" + id + "' is a loop at vertex '" +
                                    vertices_[a].id + "'");
    const int idx = edge_count();
    edges_.push_back(Edge{std::move(id), a, b});
    incident_fresh_ = false;
    return idx;
}

int WeightedGraph::add_edge(std::string id, const std::string& a, const std::string& b) {
    const int ia = index_of(a);
    const int ib = index_of(b);
    if (ia < 0) throw std::invalid_argument("edge '" + id + "' references unknown vertex '" + a + "'");
    if (ib < 0) throw std::invalid_argument("edge '" + id + "' references unknown vertex '" + b + "'");
    return add_edge(std::move(id), ia, ib);
}

int WeightedGraph::index_of(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

void WeightedGraph::refresh_incidence() const {
    incident_.assign(vertices_.size(), {});
    for (int e = 0; e < edge_count(); ++e) {
        incident_[edges_[e].a].emplace_back(e, edges_[e].b);
        incident_[edges_[e].b].emplace_back(e, edges_[e].a);
    }
    incident_fresh_ = true;
}

const std::vector<std::pair<int, int>>& WeightedGraph::incident(int v) const {
    if (!incident_fresh_) refresh_incidence();
    return incident_.at(v);
}

Int WeightedGraph::edges_between(int u, int v) const {
    Int count = 0;
    for (const auto& [e, far] : incident(u))
        if (far == v) ++count;
    return count;
}

bool WeightedGraph::is_connected() const {
    if (vertices_.empty()) return false;
    std::vector<char> vis(vertices_.size(), 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& [e, far] : incident(v))
            if (!vis[far]) {
                vis[far] = 1;
                ++count;
                stack.push_back(far);
            }
    }
    return count == vertex_count();
}

void WeightedGraph::remove_edge(int edge_index) {
    if (edge_index < 0 || edge_index >= edge_count())
        throw std::invalid_argument("remove_edge: no edge at index " + std::to_string(edge_index));
    edges_.erase(edges_.begin() + edge_index);
    incident_fresh_ = false;
}

Divisor Divisor::zero(const WeightedGraph& g) {
    Divisor d;
    d.coeff.assign(g.vertex_count(), Int(0));
    return d;
}

Divisor Divisor::ones(const WeightedGraph& g) {
    Divisor d;
    d.coeff.assign(g.vertex_count(), Int(1));
    return d;
}

ValidationReport validate_graph(const WeightedGraph& g) {
    ValidationReport report;
    if (g.vertex_count() == 0) {
        report.problems.push_back("graph has no vertices");
        return report;
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
        const Vertex& vx = g.vertex(v);
        if (vx.genus < 0)
            report.problems.push_back("vertex '" + vx.id + "' has negative genus " +
                                      vx.genus.str());
        if (vx.self_intersection >= 0)
            report.problems.push_back("vertex '" + vx.id + "' has non-negative self-intersection " +
                                      vx.self_intersection.str());
    }
    // Loops are rejected at insertion time, but a defensive scan keeps the
    // validator meaningful for graphs built by other front ends.
    for (const Edge& e : g.edges())
        if (e.a == e.b)
            report.problems.push_back("edge '" + e.id + "' is a loop");
    if (!g.is_connected())
        report.problems.push_back("graph is not connected");
    if (report.problems.empty() && !is_negative_definite(g))
        report.problems.push_back("incidence matrix is not negative definite");
    report.ok = report.problems.empty();
    return report;
}

Int intersect_with_vertex(const WeightedGraph& g, const Divisor& d, int v) {
    if (static_cast<int>(d.coeff.size()) != g.vertex_count())
        throw std::invalid_argument("divisor size does not match vertex count");
    Int acc = g.vertex(v).self_intersection * d.coeff[v];
    for (const auto& [e, far] : g.incident(v)) acc += d.coeff[far];
    return acc;
}

Int intersection(const WeightedGraph& g, const Divisor& d1, const Divisor& d2) {
    if (static_cast<int>(d1.coeff.size()) != g.vertex_count() ||
        static_cast<int>(d2.coeff.size()) != g.vertex_count())
        throw std::invalid_argument("divisor size does not match vertex count");
    Int acc = 0;
    for (int v = 0; v < g.vertex_count(); ++v)
        acc += d1.coeff[v] * intersect_with_vertex(g, d2, v);
    return acc;
}

bool is_negative_definite(const WeightedGraph& g) {
    const int n = g.vertex_count();
    if (n == 0) return false;

    // Incidence matrix, then fraction-free Bareiss elimination. After
    // eliminating the first p columns, the (p, p) entry equals the leading
    // p+1 minor, so the Sylvester signs can be read off pivot by pivot.
    std::vector<Int> w(static_cast<size_t>(n) * n, Int(0));
    for (int v = 0; v < n; ++v)
        w[static_cast<size_t>(v) * n + v] = g.vertex(v).self_intersection;
    for (const Edge& e : g.edges()) {
        w[static_cast<size_t>(e.a) * n + e.b] += 1;
        w[static_cast<size_t>(e.b) * n + e.a] += 1;
    }

    auto at = [&](int i, int j) -> Int& { return w[static_cast<size_t>(i) * n + j]; };

    Int prev = 1;
    for (int p = 0; p < n; ++p) {
        const Int det_p = at(p, p);  // leading (p+1) x (p+1) minor
        const bool want_negative = (p % 2 == 0);
        if (det_p == 0) return false;
        if (want_negative ? det_p > 0 : det_p < 0) return false;
        if (p + 1 == n) break;
        for (int i = p + 1; i < n; ++i)
            for (int j = p + 1; j < n; ++j)
                at(i, j) = (at(i, j) * at(p, p) - at(i, p) * at(p, j)) / prev;
        prev = det_p;
    }
    return true;
}

Int canonical_pairing(const WeightedGraph& g, int v) {
    if (v < 0 || v >= g.vertex_count())
        throw std::invalid_argument("canonical_pairing: unknown vertex index");
    const Vertex& vx = g.vertex(v);
    return -vx.self_intersection + 2 * vx.genus - 2;
}

BlowupResult blow_up_double_point(const WeightedGraph& g, const std::vector<Int>& m,
                                  int edge_index, int new_vertex_serial) {
    if (edge_index < 0 || edge_index >= g.edge_count())
        throw std::invalid_argument("blow_up_double_point: no edge at index " +
                                    std::to_string(edge_index));
    if (static_cast<int>(m.size()) != g.vertex_count())
        throw std::invalid_argument("blow_up_double_point: multiplicity size mismatch");

    const Edge target = g.edge(edge_index);

    BlowupResult out;
    out.graph = g;
    out.multiplicities = m;
    out.new_vertex = "b" + std::to_string(new_vertex_serial);

    out.graph.vertex(target.a).self_intersection -= 1;
    out.graph.vertex(target.b).self_intersection -= 1;
    const int w = out.graph.add_vertex(out.new_vertex, 0, -1);
    out.multiplicities.push_back(m[target.a] + m[target.b]);

    out.left_edge = target.id + "a";
    out.right_edge = target.id + "b";
    out.graph.remove_edge(edge_index);
    out.graph.add_edge(out.left_edge, target.a, w);
    out.graph.add_edge(out.right_edge, w, target.b);
    return out;
}

std::string NotLneCertificate::describe() const {
    std::string text = "not Lipschitz normally embedded (stage " + stage + ")";
    for (const Violation& v : violations) {
        text += "\n  ";
        if (!v.vertex.empty()) text += "at vertex '" + v.vertex + "': ";
        text += v.rule;
    }
    return text;
}

}  // namespace lne
