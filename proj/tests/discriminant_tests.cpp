#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "lne/discriminant.hpp"
#include "lne/metric.hpp"
#include "corpus.hpp"

using namespace lne;
using namespace lne::testing;

namespace {

RefinedGraph refine(const WeightedGraph& g) {
    Result<CycleData> data = lne_cycle_data(g);
    REQUIRE(data.ok());
    Result<RefinedGraph> r = nash_refine(g, data.value(), inner_rates(g, data.value()));
    REQUIRE(r.ok());
    return r.value();
}

QuotientGraph quotient_of(const RefinedGraph& refined) {
    std::vector<int> nodes = node_set(refined);
    PrincipalPart pp = principal_part(refined, nodes);
    Partition partition = equivalence_classes(refined, pp);
    Result<QuotientGraph> q = quotient_graph(refined, pp, partition);
    REQUIRE(q.ok());
    return q.value();
}

WeightedGraph star_l3() {
    WeightedGraph g;
    g.add_vertex("c", 0, -6);
    g.add_vertex("x1", 0, -1);
    g.add_vertex("x2", 0, -1);
    g.add_vertex("x3", 0, -1);
    g.add_edge("e0", "c", "x1");
    g.add_edge("e1", "c", "x2");
    g.add_edge("e2", "c", "x3");
    return g;
}

}  // namespace

TEST_CASE("node set of the refined corpus graphs") {
    RefinedGraph a2 = refine(a2_minimal());
    // Both arrow vertices plus the created p-node.
    CHECK(node_set(a2) == std::vector<int>{0, 1, 2});

    RefinedGraph cusp = refine(cusp_graph());
    CHECK(node_set(cusp) == std::vector<int>{0, 1, 2, 3, 4, 5});

    // Leaves of the star carry neither arrows nor polar branches.
    RefinedGraph star = refine(star_l3());
    CHECK(node_set(star) == std::vector<int>{0});
}

TEST_CASE("principal part strips node-free bamboos") {
    RefinedGraph star = refine(star_l3());
    PrincipalPart pp = principal_part(star, node_set(star));
    CHECK(pp.vertices == std::vector<int>{0});
    CHECK(pp.edges.empty());
    CHECK(pp.vertex_kept == std::vector<char>{1, 0, 0, 0});

    RefinedGraph cusp = refine(cusp_graph());
    PrincipalPart full = principal_part(cusp, node_set(cusp));
    CHECK(full.vertices.size() == 6);
    CHECK(full.edges.size() == 6);

    CHECK_THROWS_AS(principal_part(cusp, {}), std::invalid_argument);
}

TEST_CASE("equivalence classes group by rate and high-rate connectivity") {
    RefinedGraph a2 = refine(a2_minimal());
    Partition p = equivalence_classes(a2, principal_part(a2, node_set(a2)));
    const int b0 = a2.graph.index_of("b0");
    REQUIRE(p.classes.size() == 2);
    CHECK(p.classes[0] == std::vector<int>{0, 1});
    CHECK(p.classes[1] == std::vector<int>{b0});
    CHECK(p.class_of[0] == p.class_of[1]);
    CHECK(p.class_of[b0] == 1);

    RefinedGraph cusp = refine(cusp_graph());
    Partition pc = equivalence_classes(cusp, principal_part(cusp, node_set(cusp)));
    REQUIRE(pc.classes.size() == 4);
    // The three arrow vertices are joined through the rate-2 level; the
    // rate-2 vertices stay pairwise separated.
    CHECK(pc.classes[0] == std::vector<int>{0, 1, 2});
    CHECK(pc.classes[1] == std::vector<int>{3});
    CHECK(pc.classes[2] == std::vector<int>{4});
    CHECK(pc.classes[3] == std::vector<int>{5});
}

TEST_CASE("quotient of the refined A2 chain") {
    QuotientGraph q = quotient_of(refine(a2_minimal()));
    REQUIRE(q.classes.size() == 2);

    const QuotientClass& root = q.classes[q.root_class];
    CHECK(root.id == "v1");
    CHECK(root.rate == 1);
    CHECK(root.multiplicity == 1);
    CHECK(root.arrows == 0);
    CHECK(root.is_root);
    CHECK_FALSE(root.is_delta);

    REQUIRE(q.delta_classes.size() == 1);
    const QuotientClass& delta = q.classes[q.delta_classes[0]];
    CHECK(delta.id == "b0");
    CHECK(delta.rate == Rat(3, 2));
    CHECK(delta.multiplicity == 2);
    CHECK(delta.arrows == 1);
    CHECK(delta.contains_node);

    // The two sub-edges of the blown-up edge collapse to a single edge.
    CHECK(q.edges == std::vector<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("quotient of the cusp graph") {
    QuotientGraph q = quotient_of(refine(cusp_graph()));
    REQUIRE(q.classes.size() == 4);
    CHECK(q.root_class == 0);
    CHECK(q.classes[0].members == std::vector<int>{0, 1, 2});
    CHECK(q.classes[0].rate == 1);
    CHECK(q.delta_classes == std::vector<int>{1, 2, 3});
    for (int d : q.delta_classes) {
        CHECK(q.classes[d].rate == 2);
        CHECK(q.classes[d].multiplicity == 1);
        CHECK(q.classes[d].arrows == 2);
    }
    CHECK(q.edges ==
          std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {0, 3}});
}

TEST_CASE("a quotient cycle is rejected with a certificate") {
    // Hand-built refined data: a four-cycle whose rates (1, 3, 2, 3) keep all
    // four vertices in distinct classes, so the cycle survives the quotient.
    RefinedGraph synthetic;
    synthetic.graph.add_vertex("a", 0, -2);
    synthetic.graph.add_vertex("b", 0, -2);
    synthetic.graph.add_vertex("c", 0, -2);
    synthetic.graph.add_vertex("d", 0, -2);
    synthetic.graph.add_edge("e0", "a", "b");
    synthetic.graph.add_edge("e1", "b", "c");
    synthetic.graph.add_edge("e2", "c", "d");
    synthetic.graph.add_edge("e3", "d", "a");
    synthetic.cycles.z_min = Divisor::ones(synthetic.graph);
    synthetic.cycles.l_vector = {1, 0, 0, 0};
    synthetic.cycles.l_nodes = {0};
    synthetic.rates.multiplicities = synthetic.cycles.multiplicities();
    synthetic.rates.rates = {Rat(1), Rat(3), Rat(2), Rat(3)};
    synthetic.p_vec = {0, 1, 1, 1};

    std::vector<int> nodes = node_set(synthetic);
    PrincipalPart pp = principal_part(synthetic, nodes);
    Partition partition = equivalence_classes(synthetic, pp);
    REQUIRE(partition.classes.size() == 4);

    Result<QuotientGraph> q = quotient_graph(synthetic, pp, partition);
    REQUIRE_FALSE(q.ok());
    CHECK(q.certificate().stage == "discriminant");
    REQUIRE(q.certificate().violations.size() == 1);
    CHECK(q.certificate().violations[0].rule.find("not a tree") != std::string::npos);
}

TEST_CASE("mixed multiplicities inside a class are rejected") {
    // Path a(1) b(2) c(3) d(2): b and d are joined through c, but their
    // multiplicities disagree.
    RefinedGraph synthetic;
    synthetic.graph.add_vertex("a", 0, -2);
    synthetic.graph.add_vertex("b", 0, -2);
    synthetic.graph.add_vertex("c", 0, -2);
    synthetic.graph.add_vertex("d", 0, -2);
    synthetic.graph.add_edge("e0", "a", "b");
    synthetic.graph.add_edge("e1", "b", "c");
    synthetic.graph.add_edge("e2", "c", "d");
    synthetic.cycles.z_min = Divisor{{1, 2, 2, 3}};
    synthetic.cycles.l_vector = {1, 0, 0, 0};
    synthetic.cycles.l_nodes = {0};
    synthetic.rates.multiplicities = synthetic.cycles.multiplicities();
    synthetic.rates.rates = {Rat(1), Rat(2), Rat(3), Rat(2)};
    synthetic.p_vec = {0, 1, 1, 1};

    std::vector<int> nodes = node_set(synthetic);
    PrincipalPart pp = principal_part(synthetic, nodes);
    Partition partition = equivalence_classes(synthetic, pp);
    REQUIRE(partition.classes.size() == 3);

    Result<QuotientGraph> q = quotient_graph(synthetic, pp, partition);
    REQUIRE_FALSE(q.ok());
    CHECK(q.certificate().stage == "discriminant");
    REQUIRE(q.certificate().violations.size() == 1);
    CHECK(q.certificate().violations[0].vertex == "d");
    CHECK(q.certificate().violations[0].rule.find("differs") != std::string::npos);
}

TEST_CASE("eggers-wall tree of the refined A2 chain") {
    EggersWallTree tree = eggers_wall_tree(quotient_of(refine(a2_minimal())));
    REQUIRE(tree.nodes.size() == 4);

    CHECK(tree.nodes[0].id == "v1");
    CHECK(tree.nodes[0].parent == -1);
    CHECK(tree.nodes[0].e == 1);
    CHECK_FALSE(tree.nodes[0].is_leaf);

    CHECK(tree.nodes[1].id == "b0");
    CHECK(tree.nodes[1].parent == 0);
    CHECK(tree.nodes[1].e == Rat(3, 2));
    CHECK(tree.nodes[1].parent_i == 2);
    CHECK(tree.nodes[1].from_node_set);

    CHECK(tree.nodes[2].id == "v1#root");
    CHECK(tree.nodes[2].is_leaf);
    CHECK(tree.nodes[2].is_root_leaf);
    CHECK(tree.nodes[2].parent == 0);
    CHECK(tree.nodes[2].parent_i == 1);

    // The single branch leaf hangs off the interior node with the same
    // index decoration as the interior edge.
    CHECK(tree.nodes[3].id == "b0#0");
    CHECK(tree.nodes[3].parent == 1);
    CHECK(tree.nodes[3].parent_i == 2);
    CHECK_FALSE(tree.nodes[3].is_root_leaf);
}

TEST_CASE("eggers-wall tree of the cusp graph") {
    EggersWallTree tree = eggers_wall_tree(quotient_of(refine(cusp_graph())));
    REQUIRE(tree.nodes.size() == 11);

    int interior = 0;
    int branch_leaves = 0;
    int root_leaves = 0;
    for (const EwNode& node : tree.nodes) {
        if (!node.is_leaf) ++interior;
        else if (node.is_root_leaf) ++root_leaves;
        else ++branch_leaves;
    }
    CHECK(interior == 4);
    CHECK(root_leaves == 1);
    CHECK(branch_leaves == 6);

    for (const EwNode& node : tree.nodes) {
        if (node.parent < 0) continue;
        // All multiplicities are one, so every index decoration is one.
        CHECK(node.parent_i == 1);
        if (!node.is_leaf) CHECK(node.e == 2);
    }
}

TEST_CASE("branch exponents of the refined A2 chain") {
    std::vector<BranchExponents> branches =
        branch_exponent_lists(eggers_wall_tree(quotient_of(refine(a2_minimal()))));
    REQUIRE(branches.size() == 1);
    CHECK(branches[0].leaf_id == "b0#0");
    CHECK(branches[0].full == std::vector<Rat>{Rat(3, 2)});
    CHECK(branches[0].at_index_jumps == std::vector<Rat>{Rat(3, 2)});
    CHECK_FALSE(branches[0].lists_differ);
}

TEST_CASE("branch exponents of the cusp graph") {
    std::vector<BranchExponents> branches =
        branch_exponent_lists(eggers_wall_tree(quotient_of(refine(cusp_graph()))));
    REQUIRE(branches.size() == 6);
    for (const BranchExponents& b : branches) {
        CHECK(b.full == std::vector<Rat>{Rat(2)});
        // The exponent 2 is an integer, so the index function never jumps
        // and the characteristic-exponent list stays empty.
        CHECK(b.at_index_jumps.empty());
        CHECK(b.lists_differ);
    }
}

TEST_CASE("arrows on the root class become root-attached branches") {
    QuotientGraph q = quotient_of(refine(chain_23()));
    REQUIRE(q.classes.size() == 2);
    CHECK(q.classes[0].is_root);
    CHECK(q.classes[0].is_delta);
    CHECK(q.classes[0].arrows == 2);
    CHECK(q.classes[1].arrows == 1);

    std::vector<BranchExponents> branches =
        branch_exponent_lists(eggers_wall_tree(q));
    REQUIRE(branches.size() == 3);
    // Two branches sit at the root with empty exponent lists, one reaches
    // the created vertex at rate 3/2.
    int empty = 0;
    int deep = 0;
    for (const BranchExponents& b : branches) {
        if (b.full.empty()) ++empty;
        if (b.full == std::vector<Rat>{Rat(3, 2)}) ++deep;
    }
    CHECK(empty == 2);
    CHECK(deep == 1);
}
