#ifndef LNE_DISCRIMINANT_HPP
#define LNE_DISCRIMINANT_HPP

#include <string>
#include <vector>

#include "lne/certificate.hpp"
#include "lne/nash.hpp"

// Discriminant-curve combinatorics. The node set of a refined graph consists
// of arrow vertices, p-nodes and vertices of valency at least three; the
// principal part is what remains after stripping bamboos that carry no node.
// Two principal-part vertices are equivalent when they share a rate and are
// connected through vertices of rate at least that value; the quotient by
// this relation is a tree that serves as the resolution graph of the generic
// discriminant curve, and decorating it following the rates and
// multiplicities yields the Eggers-Wall tree.

namespace lne {

// Ascending vertex indices of the node set.
std::vector<int> node_set(const RefinedGraph& refined);

struct PrincipalPart {
    std::vector<int> vertices;     // ascending indices into the refined graph
    std::vector<int> edges;        // ascending edge indices, both ends kept
    std::vector<char> vertex_kept; // size = refined vertex count
    std::vector<char> edge_kept;   // size = refined edge count
    std::vector<int> nodes;        // the node set that generated it
};

PrincipalPart principal_part(const RefinedGraph& refined, const std::vector<int>& nodes);

struct Partition {
    std::vector<int> class_of;              // vertex index -> class id, -1 outside
    std::vector<std::vector<int>> classes;  // ascending member indices per class
};

// Classes are computed level by level in descending rate order with a
// disjoint-set structure; class ids are assigned in order of their minimum
// member index, so the partition is deterministic.
Partition equivalence_classes(const RefinedGraph& refined, const PrincipalPart& pp);

struct QuotientClass {
    std::string id;            // vertex id of the minimum-index member
    std::vector<int> members;  // ascending vertex indices
    Rat rate;
    Int multiplicity;
    Int arrows;                // sum of p_v over members
    bool contains_node = false;
    bool is_root = false;
    bool is_delta = false;     // contains a p-node (equivalently arrows > 0)
};

struct QuotientGraph {
    std::vector<QuotientClass> classes;
    std::vector<std::pair<int, int>> edges;  // class index pairs, deterministic order
    int root_class = -1;
    std::vector<int> delta_classes;          // ascending class indices
};

// Builds the class graph, collapsing edges whose endpoint pairs are
// equivalent. The result must be a tree with constant per-class rate and
// multiplicity whose root class is exactly the arrow vertices; violations
// yield a certificate.
Result<QuotientGraph> quotient_graph(const RefinedGraph& refined, const PrincipalPart& pp,
                                     const Partition& partition);

struct EwNode {
    std::string id;
    int parent = -1;        // node index; -1 at the root
    Rat e;                  // rate decoration; meaningful on interior nodes
    Int parent_i;           // index decoration of the edge towards the parent
    Int multiplicity;       // carried along for edge decorations
    bool is_leaf = false;   // attached branch or root leaf
    bool is_root_leaf = false;
    bool from_node_set = false;
    int quotient_class = -1;
};

struct EggersWallTree {
    std::vector<EwNode> nodes;  // nodes[0] is the root
};

// Quotient tree rooted at the root class, plus one leaf at the root and one
// leaf per arrow at every delta class. Interior edges carry
// i = lcm(m_parent, m_child); attached leaves carry i = m of their node.
EggersWallTree eggers_wall_tree(const QuotientGraph& q);

struct BranchExponents {
    std::string leaf_id;
    std::vector<Rat> full;            // e at non-root node-set-derived nodes, ascending
    std::vector<Rat> at_index_jumps;  // sublist where the index function jumps
    bool lists_differ = false;
};

// One entry per attached branch leaf (the root leaf is not a branch).
std::vector<BranchExponents> branch_exponent_lists(const EggersWallTree& tree);

}  // namespace lne

#endif
