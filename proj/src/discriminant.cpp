#include "lne/discriminant.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lne {

namespace {

// Disjoint-set over vertex indices with path compression; union by size.
class DisjointSet {
public:
    explicit DisjointSet(int n) : parent_(n), size_(n, 1) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }
    int find(int x) {
        int root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            int next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
};

}  // namespace

std::vector<int> node_set(const RefinedGraph& refined) {
    const WeightedGraph& g = refined.graph;
    std::vector<int> nodes;
    for (int v = 0; v < g.vertex_count(); ++v) {
        const bool arrow = refined.cycles.l_vector[v] > 0;
        const bool polar = refined.p_vec[v] > 0;
        const bool branching = g.valency(v) >= 3;
        if (arrow || polar || branching) nodes.push_back(v);
    }
    return nodes;
}

PrincipalPart principal_part(const RefinedGraph& refined, const std::vector<int>& nodes) {
    const WeightedGraph& g = refined.graph;
    if (nodes.empty()) throw std::invalid_argument("principal_part: empty node set");

    PrincipalPart pp;
    pp.nodes = nodes;
    pp.vertex_kept.assign(g.vertex_count(), 1);
    pp.edge_kept.assign(g.edge_count(), 1);
    std::vector<char> is_node(g.vertex_count(), 0);
    for (int v : nodes) is_node[v] = 1;

    // Strip non-node vertices that have become leaves (or isolated) until
    // stable; what falls away are exactly the bamboos hanging off the part
    // of the graph spanned by the nodes.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (!pp.vertex_kept[v] || is_node[v]) continue;
            int live = 0;
            for (const auto& [e, far] : g.incident(v))
                if (pp.edge_kept[e]) ++live;
            if (live <= 1) {
                pp.vertex_kept[v] = 0;
                for (const auto& [e, far] : g.incident(v)) pp.edge_kept[e] = 0;
                changed = true;
            }
        }
    }

    for (int v = 0; v < g.vertex_count(); ++v)
        if (pp.vertex_kept[v]) pp.vertices.push_back(v);
    for (int e = 0; e < g.edge_count(); ++e)
        if (pp.edge_kept[e]) pp.edges.push_back(e);

    // Path coverage: a surviving non-node vertex must have both a strictly
    // lower-rate and a strictly higher-rate kept neighbour. Following those
    // monotone chains in both directions lands on nodes, which exhibits the
    // vertex on an injective node-to-node path.
    const std::vector<Rat>& q = refined.rates.rates;
    for (int v : pp.vertices) {
        if (is_node[v]) continue;
        bool lower = false;
        bool higher = false;
        for (const auto& [e, far] : g.incident(v)) {
            if (!pp.edge_kept[e]) continue;
            if (q[far] < q[v]) lower = true;
            if (q[far] > q[v]) higher = true;
        }
        if (!lower || !higher)
            throw internal_error("principal part kept vertex '" + g.vertex(v).id +
                                 "' that lies on no node-to-node path");
    }
    return pp;
}

Partition equivalence_classes(const RefinedGraph& refined, const PrincipalPart& pp) {
    const WeightedGraph& g = refined.graph;
    const std::vector<Rat>& q = refined.rates.rates;

    // Sweep rate levels from the top. Edges whose lower endpoint clears the
    // current level connect regions of {q >= level}; vertices exactly at the
    // level then split into classes by their component in that region.
    std::vector<Rat> levels;
    for (int v : pp.vertices) levels.push_back(q[v]);
    std::sort(levels.begin(), levels.end(), std::greater<Rat>());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    std::vector<int> edges_by_min = pp.edges;
    std::sort(edges_by_min.begin(), edges_by_min.end(), [&](int x, int y) {
        const Rat mx = std::min(q[g.edge(x).a], q[g.edge(x).b]);
        const Rat my = std::min(q[g.edge(y).a], q[g.edge(y).b]);
        if (mx != my) return mx > my;
        return x < y;
    });
    std::vector<int> vertices_by_rate = pp.vertices;
    std::sort(vertices_by_rate.begin(), vertices_by_rate.end(), [&](int x, int y) {
        if (q[x] != q[y]) return q[x] > q[y];
        return x < y;
    });

    DisjointSet dsu(g.vertex_count());
    size_t next_edge = 0;
    size_t next_vertex = 0;
    std::vector<std::vector<int>> classes;

    for (const Rat& level : levels) {
        while (next_edge < edges_by_min.size()) {
            const Edge& e = g.edge(edges_by_min[next_edge]);
            if (std::min(q[e.a], q[e.b]) < level) break;
            dsu.unite(e.a, e.b);
            ++next_edge;
        }
        std::map<int, std::vector<int>> groups;  // component root -> members
        while (next_vertex < vertices_by_rate.size() && q[vertices_by_rate[next_vertex]] == level) {
            int v = vertices_by_rate[next_vertex++];
            groups[dsu.find(v)].push_back(v);
        }
        for (auto& [root, members] : groups) {
            std::sort(members.begin(), members.end());
            classes.push_back(std::move(members));
        }
    }

    // Deterministic class order: by minimum member index. Grouping by DSU
    // root alone would leak union internals into the output order.
    std::sort(classes.begin(), classes.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });

    Partition out;
    out.class_of.assign(g.vertex_count(), -1);
    out.classes = std::move(classes);
    for (int c = 0; c < static_cast<int>(out.classes.size()); ++c)
        for (int v : out.classes[c]) out.class_of[v] = c;
    return out;
}

Result<QuotientGraph> quotient_graph(const RefinedGraph& refined, const PrincipalPart& pp,
                                     const Partition& partition) {
    const WeightedGraph& g = refined.graph;
    const std::vector<Rat>& q = refined.rates.rates;

    std::vector<char> is_node(g.vertex_count(), 0);
    for (int v : pp.nodes) is_node[v] = 1;

    QuotientGraph out;
    NotLneCertificate cert;
    cert.stage = "discriminant";

    for (const std::vector<int>& members : partition.classes) {
        QuotientClass cls;
        cls.members = members;
        cls.id = g.vertex(members[0]).id;
        cls.rate = q[members[0]];
        cls.multiplicity = refined.rates.multiplicities[members[0]];
        for (int v : members) {
            if (q[v] != cls.rate)
                throw internal_error("equivalence class '" + cls.id + "' mixes rates");
            if (refined.rates.multiplicities[v] != cls.multiplicity)
                cert.violations.push_back(
                    {g.vertex(v).id, "multiplicity " + refined.rates.multiplicities[v].str() +
                                         " differs from " + cls.multiplicity.str() +
                                         " inside one discriminant class"});
            cls.arrows += refined.p_vec[v];
            if (is_node[v]) cls.contains_node = true;
        }
        cls.is_delta = cls.arrows > 0;
        out.classes.push_back(std::move(cls));
    }

    // Edges are identified exactly when their endpoint classes coincide;
    // endpoints pair up by rate since every refined edge joins two distinct
    // rates and classes are rate-constant.
    std::set<std::pair<int, int>> edge_set;
    for (int e_idx : pp.edges) {
        const Edge& e = g.edge(e_idx);
        int lo = partition.class_of[e.a];
        int hi = partition.class_of[e.b];
        if (out.classes[lo].rate > out.classes[hi].rate) std::swap(lo, hi);
        if (lo == hi)
            throw internal_error("quotient self-loop at class '" + out.classes[lo].id + "'");
        edge_set.insert({lo, hi});
    }
    out.edges.assign(edge_set.begin(), edge_set.end());

    // Root class: the one holding the arrow vertices, which is exactly the
    // rate-1 class. Both descriptions must pick the same class.
    for (int c = 0; c < static_cast<int>(out.classes.size()); ++c) {
        if (out.classes[c].rate == 1) {
            if (out.root_class >= 0)
                throw internal_error("two rate-1 classes in the quotient");
            out.root_class = c;
            out.classes[c].is_root = true;
        }
        if (out.classes[c].is_delta) out.delta_classes.push_back(c);
    }
    if (out.root_class < 0) throw internal_error("quotient has no rate-1 class");
    {
        std::vector<int> root_members = out.classes[out.root_class].members;
        if (root_members != refined.cycles.l_nodes)
            throw internal_error("root class differs from the arrow vertex set");
    }

    // Tree check: connected with exactly one fewer edge than classes.
    const int n_classes = static_cast<int>(out.classes.size());
    DisjointSet dsu(n_classes);
    for (const auto& [a, b] : out.edges) dsu.unite(a, b);
    int components = 0;
    for (int c = 0; c < n_classes; ++c)
        if (dsu.find(c) == c) ++components;
    if (components != 1 || static_cast<int>(out.edges.size()) != n_classes - 1)
        cert.violations.push_back(
            {"", "discriminant quotient is not a tree (" + std::to_string(n_classes) +
                     " classes, " + std::to_string(out.edges.size()) + " edges, " +
                     std::to_string(components) + " components)"});

    if (!cert.violations.empty()) return Result<QuotientGraph>::rejected(std::move(cert));

    // Rates must strictly increase from the root towards every delta class;
    // the descending shortest-path chain from each class realizes the unique
    // tree path, so a violation here is a computation bug.
    std::vector<std::vector<int>> adjacency(n_classes);
    for (const auto& [a, b] : out.edges) {
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
    }
    std::vector<int> parent(n_classes, -2);
    std::vector<int> order{out.root_class};
    parent[out.root_class] = -1;
    for (size_t i = 0; i < order.size(); ++i)
        for (int next : adjacency[order[i]])
            if (parent[next] == -2) {
                parent[next] = order[i];
                order.push_back(next);
            }
    for (int d : out.delta_classes)
        for (int at = d; parent[at] >= 0; at = parent[at])
            if (out.classes[at].rate <= out.classes[parent[at]].rate)
                throw internal_error("rates fail to increase towards delta class '" +
                                     out.classes[d].id + "'");

    return Result<QuotientGraph>::accepted(std::move(out));
}

EggersWallTree eggers_wall_tree(const QuotientGraph& q) {
    const int n_classes = static_cast<int>(q.classes.size());
    std::vector<std::vector<int>> adjacency(n_classes);
    for (const auto& [a, b] : q.edges) {
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
    }
    for (auto& list : adjacency) std::sort(list.begin(), list.end());

    EggersWallTree tree;
    std::vector<int> node_of_class(n_classes, -1);

    // Interior nodes by breadth-first order from the root, children in class
    // index order; this fixes node numbering independent of union internals.
    std::vector<int> order{q.root_class};
    node_of_class[q.root_class] = 0;
    {
        const QuotientClass& root = q.classes[q.root_class];
        EwNode node;
        node.id = root.id;
        node.e = root.rate;
        node.multiplicity = root.multiplicity;
        node.from_node_set = root.contains_node;
        node.quotient_class = q.root_class;
        tree.nodes.push_back(std::move(node));
    }
    for (size_t i = 0; i < order.size(); ++i) {
        const int cls = order[i];
        for (int next : adjacency[cls]) {
            if (node_of_class[next] >= 0) continue;
            EwNode node;
            node.id = q.classes[next].id;
            node.parent = node_of_class[cls];
            node.e = q.classes[next].rate;
            node.multiplicity = q.classes[next].multiplicity;
            node.parent_i = lcm(q.classes[cls].multiplicity, q.classes[next].multiplicity);
            node.from_node_set = q.classes[next].contains_node;
            node.quotient_class = next;
            node_of_class[next] = static_cast<int>(tree.nodes.size());
            tree.nodes.push_back(std::move(node));
            order.push_back(next);
        }
    }

    // One leaf at the root for the base curvette, then one leaf per branch
    // at every delta class, in tree node order.
    {
        EwNode leaf;
        leaf.id = tree.nodes[0].id + "#root";
        leaf.parent = 0;
        leaf.e = tree.nodes[0].e;
        leaf.multiplicity = tree.nodes[0].multiplicity;
        leaf.parent_i = tree.nodes[0].multiplicity;
        leaf.is_leaf = true;
        leaf.is_root_leaf = true;
        leaf.quotient_class = q.root_class;
        tree.nodes.push_back(std::move(leaf));
    }
    const int interior_count = n_classes;
    for (int node_idx = 0; node_idx < interior_count; ++node_idx) {
        const int cls = tree.nodes[node_idx].quotient_class;
        if (!q.classes[cls].is_delta) continue;
        Int arrows = q.classes[cls].arrows;
        for (Int j = 0; j < arrows; ++j) {
            EwNode leaf;
            leaf.id = q.classes[cls].id + "#" + j.str();
            leaf.parent = node_idx;
            leaf.e = tree.nodes[node_idx].e;
            leaf.multiplicity = q.classes[cls].multiplicity;
            leaf.parent_i = q.classes[cls].multiplicity;
            leaf.is_leaf = true;
            leaf.quotient_class = cls;
            tree.nodes.push_back(std::move(leaf));
        }
    }

    for (const EwNode& node : tree.nodes)
        if (node.parent >= 0 && node.parent_i < 1)
            throw internal_error("index decoration below one on edge into '" + node.id + "'");
    return tree;
}

std::vector<BranchExponents> branch_exponent_lists(const EggersWallTree& tree) {
    std::vector<BranchExponents> out;
    for (const EwNode& node : tree.nodes) {
        if (!node.is_leaf) continue;
        if (node.is_root_leaf) continue;  // the base leaf is not a discriminant branch

        BranchExponents branch;
        branch.leaf_id = node.id;

        // Interior nodes on the root-to-leaf path, root and leaf excluded,
        // then filtered to those that came from the node set.
        std::vector<int> path;
        for (int at = node.parent; at > 0; at = tree.nodes[at].parent) path.push_back(at);
        std::reverse(path.begin(), path.end());

        Int index = 1;
        for (int idx : path) {
            if (!tree.nodes[idx].from_node_set) continue;
            const Rat e = tree.nodes[idx].e;
            branch.full.push_back(e);
            const Int den = denominator(e);
            if (index % den != 0) {
                branch.at_index_jumps.push_back(e);
                index = lcm(index, den);
            }
        }
        for (size_t i = 1; i < branch.full.size(); ++i)
            if (!(branch.full[i - 1] < branch.full[i]))
                throw internal_error("branch exponents fail to increase towards leaf '" +
                                     branch.leaf_id + "'");
        branch.lists_differ = branch.full != branch.at_index_jumps;
        out.push_back(std::move(branch));
    }
    return out;
}

}  // namespace lne
