#include "lne/cycles.hpp"

#include <algorithm>

namespace lne {

bool in_lipman_cone(const WeightedGraph& g, const Divisor& d) {
    for (int v = 0; v < g.vertex_count(); ++v)
        if (intersect_with_vertex(g, d, v) > 0) return false;
    return true;
}

Divisor fundamental_cycle(const WeightedGraph& g) {
    Divisor z = Divisor::ones(g);
    const int n = g.vertex_count();

    // Row values of I * z, updated incrementally: raising z_v changes row v
    // by e(v) and each neighbouring row by the connecting edge count.
    std::vector<Int> row(n);
    for (int v = 0; v < n; ++v) row[v] = intersect_with_vertex(g, z, v);

    Int max_e = 1;
    for (int v = 0; v < n; ++v)
        max_e = std::max(max_e, Int(-g.vertex(v).self_intersection));
    const Int cap = Int(64) * n * max_e;
    Int total = n;

    for (;;) {
        int target = -1;
        for (int v = 0; v < n; ++v)
            if (row[v] > 0) {
                target = v;
                break;
            }
        if (target < 0) break;
        z.coeff[target] += 1;
        total += 1;
        if (total > cap)
            throw internal_error(
                "fundamental cycle iteration exceeded the coefficient cap; "
                "the graph cannot be negative definite");
        row[target] += g.vertex(target).self_intersection;
        for (const auto& [e, far] : g.incident(target)) row[far] += 1;
    }
    return z;
}

std::vector<Int> l_vector(const WeightedGraph& g, const Divisor& z) {
    std::vector<Int> l(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) l[v] = -intersect_with_vertex(g, z, v);
    return l;
}

Result<CycleData> lne_cycle_data(const WeightedGraph& g) {
    CycleData data;
    data.z_min = fundamental_cycle(g);
    data.l_vector = l_vector(g, data.z_min);

    for (int v = 0; v < g.vertex_count(); ++v) {
        if (data.z_min.coeff[v] <= 0)
            throw internal_error("fundamental cycle is not strictly positive at vertex '" +
                                 g.vertex(v).id + "'");
        if (data.l_vector[v] < 0)
            throw internal_error("negative arrow count at vertex '" + g.vertex(v).id + "'");
        if (data.l_vector[v] > 0) data.l_nodes.push_back(v);
    }

    NotLneCertificate cert;
    cert.stage = "cycles";
    for (int v : data.l_nodes)
        if (data.z_min.coeff[v] != 1)
            cert.violations.push_back(
                {g.vertex(v).id,
                 "carries arrows (l = " + data.l_vector[v].str() +
                     ") but has fundamental-cycle coefficient " + data.z_min.coeff[v].str() +
                     "; arrow vertices must have multiplicity one"});
    if (!cert.violations.empty()) return Result<CycleData>::rejected(std::move(cert));
    return Result<CycleData>::accepted(std::move(data));
}

Int total_multiplicity(const WeightedGraph& g, const CycleData& data) {
    const Int self = -intersection(g, data.z_min, data.z_min);

    // Bilinearity gives the same number as the arrow-weighted multiplicity
    // sum; both are computed so a mismatch cannot pass silently.
    Int weighted = 0;
    for (int v = 0; v < g.vertex_count(); ++v)
        weighted += data.multiplicities()[v] * data.l_vector[v];
    if (self != weighted)
        throw internal_error("total multiplicity mismatch: -Z.Z = " + self.str() +
                             " but sum m_v l_v = " + weighted.str());
    return self;
}

}  // namespace lne
