#ifndef LNE_CYCLES_HPP
#define LNE_CYCLES_HPP

#include <vector>

#include "lne/certificate.hpp"
#include "lne/graph.hpp"

// Fundamental cycle and its consequences. The Lipman cone of a negative
// definite graph is the set of divisors D with D . E_v <= 0 everywhere; its
// unique minimal nonzero element Z_min is computed by Laufer's algorithm.
// For Lipschitz normally embedded germs the coefficients of Z_min are the
// component multiplicities m_v, l_v = -(Z_min . E_v) counts arrows, and
// every vertex with l_v > 0 must have m_v = 1; graphs violating that are
// rejected with a certificate.

namespace lne {

struct CycleData {
    Divisor z_min;                 // positive coefficients, one per vertex
    std::vector<Int> l_vector;     // l_v = -(Z_min . E_v), all >= 0
    std::vector<int> l_nodes;      // ascending vertex indices with l_v > 0

    const std::vector<Int>& multiplicities() const { return z_min.coeff; }
};

bool in_lipman_cone(const WeightedGraph& g, const Divisor& d);

// Laufer's algorithm: start from the all-ones divisor (valid because
// Z_min > 0 on every vertex) and raise the coefficient of the lowest-index
// vertex with Z . E_v > 0 until none remains. The coefficient-sum cap
// guards against a non-negative-definite graph slipping through validation.
Divisor fundamental_cycle(const WeightedGraph& g);

std::vector<Int> l_vector(const WeightedGraph& g, const Divisor& z);

// Assembles CycleData and applies the multiplicity-one test at every vertex
// carrying arrows.
Result<CycleData> lne_cycle_data(const WeightedGraph& g);

// -Z_min . Z_min, which also equals the arrow-weighted sum of multiplicities.
Int total_multiplicity(const WeightedGraph& g, const CycleData& data);

}  // namespace lne

#endif
