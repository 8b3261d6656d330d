#ifndef LNE_TESTS_RANDOM_GRAPHS_HPP
#define LNE_TESTS_RANDOM_GRAPHS_HPP

// Seeded random graph generation for property suites. Draws a random tree,
// sprinkles extra (possibly parallel) edges, assigns self-intersections and
// keeps only connected negative-definite results, so every property test
// runs on a deterministic stream of valid resolution graphs. Filtering uses
// the oracle-side definiteness check, keeping the stream independent of the
// library under test.

#include <random>
#include <string>
#include <vector>

#include "lne/graph.hpp"
#include "oracles.hpp"

namespace lne::testing {

class RandomGraphs {
public:
    explicit RandomGraphs(std::uint64_t seed) : rng_(seed) {}

    // One random connected negative-definite graph, genus 0, n vertices in
    // [2, max_vertices], e(v) in [-4, -1]. Resamples until the filter passes.
    WeightedGraph next(int max_vertices = 6) {
        for (;;) {
            WeightedGraph g = candidate(max_vertices);
            if (oracle_connected(g) && ldlt_negative_definite(g)) return g;
        }
    }

private:
    std::mt19937_64 rng_;

    int uniform(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng_);
    }

    static bool oracle_connected(const WeightedGraph& g) {
        const int n = g.vertex_count();
        std::vector<char> vis(n, 0);
        std::vector<int> stack{0};
        vis[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const Edge& e : g.edges()) {
                int far = -1;
                if (e.a == v) far = e.b;
                if (e.b == v) far = e.a;
                if (far >= 0 && !vis[far]) {
                    vis[far] = 1;
                    ++count;
                    stack.push_back(far);
                }
            }
        }
        return count == n;
    }

    WeightedGraph candidate(int max_vertices) {
        const int n = uniform(2, max_vertices);
        WeightedGraph g;
        for (int v = 0; v < n; ++v)
            g.add_vertex("v" + std::to_string(v), 0, Int(-uniform(1, 4)));
        int eid = 0;
        for (int v = 1; v < n; ++v)
            g.add_edge("e" + std::to_string(eid++), uniform(0, v - 1), v);
        const int extra = uniform(0, 2);
        for (int k = 0; k < extra; ++k) {
            int a = uniform(0, n - 1);
            int b = uniform(0, n - 1);
            if (a != b) g.add_edge("e" + std::to_string(eid++), a, b);
        }
        return g;
    }
};

}  // namespace lne::testing

#endif
