#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "lne/metric.hpp"
#include "lne/nash.hpp"
#include "corpus.hpp"

using namespace lne;
using namespace lne::testing;

namespace {

CycleData accepted_cycles(const WeightedGraph& g) {
    Result<CycleData> r = lne_cycle_data(g);
    REQUIRE(r.ok());
    return r.value();
}

RefinedGraph refine(const WeightedGraph& g) {
    CycleData data = accepted_cycles(g);
    Result<RefinedGraph> r = nash_refine(g, data, inner_rates(g, data));
    REQUIRE(r.ok());
    return r.value();
}

// Central (-6)-vertex with three (-1)-leaves; already tight, with all three
// arrows on the center.
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

TEST_CASE("blowup predicate compares the rate gap with the edge length") {
    CHECK(edge_needs_blowup(Rat(1), 1, Rat(1), 1));
    CHECK_FALSE(edge_needs_blowup(Rat(1), 1, Rat(2), 1));
    CHECK_FALSE(edge_needs_blowup(Rat(1), 1, Rat(3, 2), 2));
    CHECK(edge_needs_blowup(Rat(3, 2), 2, Rat(3, 2), 2));
    CHECK_FALSE(edge_needs_blowup(Rat(2), 1, Rat(1), 1));
}

TEST_CASE("interior p-node rate") {
    CHECK(interior_p_node_rate(Rat(1), Rat(1), Rat(1)) == Rat(3, 2));
    CHECK(interior_p_node_rate(Rat(1), Rat(3, 2), Rat(1)) == Rat(7, 4));
    CHECK_THROWS_AS(interior_p_node_rate(Rat(1), Rat(3, 2), Rat(1, 2)),
                    std::invalid_argument);
}

TEST_CASE("incoming edge counts") {
    WeightedGraph cusp = cusp_graph();
    std::vector<Rat> q{1, 1, 1, 2, 2, 2};
    CHECK(incoming_edge_count(cusp, q, cusp.index_of("v1")) == 0);
    CHECK(incoming_edge_count(cusp, q, cusp.index_of("w1")) == 2);

    WeightedGraph refined = a2_refined();
    std::vector<Rat> qr{1, Rat(3, 2), 1};
    CHECK(incoming_edge_count(refined, qr, 1) == 2);

    // Parallel edges count once each.
    WeightedGraph dbl;
    dbl.add_vertex("u", 0, -2);
    dbl.add_vertex("w", 0, -3);
    dbl.add_edge("e0", 0, 1);
    dbl.add_edge("e1", 0, 1);
    std::vector<Rat> qd{2, 1};
    CHECK(incoming_edge_count(dbl, qd, 0) == 2);
}

TEST_CASE("p-nodes of the corpus graphs") {
    WeightedGraph cusp = cusp_graph();
    CycleData data = accepted_cycles(cusp);
    RateAssignment rates = inner_rates(cusp, data);
    Result<std::vector<Int>> p = p_vector(cusp, data, rates);
    REQUIRE(p.ok());
    Result<std::vector<int>> nodes = p_nodes(cusp, data, rates.rates, p.value());
    REQUIRE(nodes.ok());
    CHECK(nodes.value() == std::vector<int>{3, 4, 5});

    RefinedGraph star = refine(star_l3());
    CHECK(star.blowups_performed == 0);
    CHECK(star.p_node_indices == std::vector<int>{0});
    CHECK(star.p_vec == std::vector<Int>{4, 0, 0, 0});
}

TEST_CASE("refining the A2 chain inserts one vertex in the middle") {
    RefinedGraph r = refine(a2_minimal());
    CHECK(r.blowups_performed == 1);
    REQUIRE(r.graph.vertex_count() == 3);

    const int v1 = r.graph.index_of("v1");
    const int v2 = r.graph.index_of("v2");
    const int b0 = r.graph.index_of("b0");
    REQUIRE(b0 >= 0);
    CHECK(r.graph.vertex(v1).self_intersection == -3);
    CHECK(r.graph.vertex(v2).self_intersection == -3);
    CHECK(r.graph.vertex(b0).self_intersection == -1);
    CHECK(r.cycles.multiplicities()[b0] == 2);
    CHECK(r.rates.rates[v1] == 1);
    CHECK(r.rates.rates[v2] == 1);
    CHECK(r.rates.rates[b0] == Rat(3, 2));
    CHECK(r.p_vec[b0] == 1);
    CHECK(r.p_vec[v1] == 0);
    CHECK(r.p_node_indices == std::vector<int>{b0});

    REQUIRE(r.provenance.count("b0") == 1);
    CHECK(r.provenance.at("b0").parent_edge == "e0");
    CHECK(r.provenance.at("b0").t == Rat(1, 2));
}

TEST_CASE("tight graphs refine to themselves") {
    for (const WeightedGraph& g : {cusp_graph(), a2_refined(), single_vertex()}) {
        RefinedGraph r = refine(g);
        CHECK(r.blowups_performed == 0);
        CHECK(r.graph.vertex_count() == g.vertex_count());
        CHECK(r.graph.edge_count() == g.edge_count());
        CHECK(r.provenance.empty());
    }
    RefinedGraph cusp = refine(cusp_graph());
    CHECK(cusp.p_vec == std::vector<Int>{0, 0, 0, 2, 2, 2});
    CHECK(cusp.p_node_indices == std::vector<int>{3, 4, 5});
}

TEST_CASE("refining the (-2)(-3) chain") {
    RefinedGraph r = refine(chain_23());
    CHECK(r.blowups_performed == 1);
    const int v1 = r.graph.index_of("v1");
    const int v2 = r.graph.index_of("v2");
    const int b0 = r.graph.index_of("b0");
    CHECK(r.graph.vertex(v1).self_intersection == -3);
    CHECK(r.graph.vertex(v2).self_intersection == -4);
    CHECK(r.graph.vertex(b0).self_intersection == -1);
    CHECK(r.cycles.multiplicities()[b0] == 2);
    CHECK(r.cycles.l_vector[v2] == 2);
    CHECK(r.p_vec[v1] == 0);
    CHECK(r.p_vec[v2] == 2);
    CHECK(r.p_vec[b0] == 1);
    // v2 carries two arrows, b0 has two incoming edges.
    CHECK(r.p_node_indices == std::vector<int>{v2, b0});
}

TEST_CASE("characterization mismatch is reported as evidence") {
    WeightedGraph g = single_vertex(-1, 1);
    CycleData data = accepted_cycles(g);
    Result<RefinedGraph> r = nash_refine(g, data, inner_rates(g, data));
    REQUIRE_FALSE(r.ok());
    CHECK(r.certificate().stage == "nash");
    REQUIRE(r.certificate().violations.size() == 1);
    CHECK(r.certificate().violations[0].vertex == "v1");
    CHECK(r.certificate().violations[0].rule.find("neither") != std::string::npos);
}

TEST_CASE("blowup cap is enforced and configurable") {
    // Chain (-2)(-3)(-2): all three rates start at one, so both edges need a
    // blowup and the refinement performs exactly two.
    WeightedGraph g;
    g.add_vertex("v1", 0, -2);
    g.add_vertex("v2", 0, -3);
    g.add_vertex("v3", 0, -2);
    g.add_edge("e0", 0, 1);
    g.add_edge("e1", 1, 2);

    CycleData data = accepted_cycles(g);
    RateAssignment rates = inner_rates(g, data);

    RefinedGraph unbounded = refine(g);
    CHECK(unbounded.blowups_performed == 2);

    setenv("LNE_BLOWUP_CAP", "1", 1);
    CHECK_THROWS_AS(nash_refine(g, data, rates), internal_error);
    setenv("LNE_BLOWUP_CAP", "banana", 1);
    CHECK_THROWS_AS(nash_refine(g, data, rates), std::invalid_argument);
    unsetenv("LNE_BLOWUP_CAP");
    CHECK(nash_refine(g, data, rates).ok());
}

TEST_CASE("local degrees") {
    RefinedGraph cusp = refine(cusp_graph());
    for (const char* id : {"v1", "v2", "v3"})
        CHECK(local_degree(cusp, cusp.graph.index_of(id)) == 1);
    for (const char* id : {"w1", "w2", "w3"})
        CHECK(local_degree(cusp, cusp.graph.index_of(id)) == 2);

    RefinedGraph a2 = refine(a2_minimal());
    CHECK(local_degree(a2, a2.graph.index_of("b0")) == 2);
    CHECK(local_degree(a2, a2.graph.index_of("v1")) == 1);
}
