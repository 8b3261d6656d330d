#include "lne/metric.hpp"

#include <queue>
#include <stdexcept>
#include <tuple>

namespace lne {

Rat edge_length(const Int& m_v, const Int& m_w) {
    if (m_v <= 0 || m_w <= 0)
        throw std::invalid_argument("edge_length requires positive multiplicities");
    return Rat(Int(1), lcm(m_v, m_w));
}

std::vector<Rat> distance_to_set(const WeightedGraph& g, const std::vector<Int>& m,
                                 const std::vector<int>& sources) {
    if (sources.empty()) throw std::invalid_argument("distance_to_set: empty source set");
    if (static_cast<int>(m.size()) != g.vertex_count())
        throw std::invalid_argument("distance_to_set: multiplicity size mismatch");

    const int n = g.vertex_count();
    std::vector<Rat> dist(n, Rat(-1));
    std::vector<char> done(n, 0);

    // (distance, vertex index); the index participates in the comparison so
    // equal-distance pops happen in a fixed order.
    using Entry = std::pair<Rat, int>;
    auto cmp = [](const Entry& a, const Entry& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> queue(cmp);

    for (int s : sources) {
        dist[s] = 0;
        queue.emplace(Rat(0), s);
    }
    while (!queue.empty()) {
        auto [d, v] = queue.top();
        queue.pop();
        if (done[v]) continue;
        done[v] = 1;
        for (const auto& [e, far] : g.incident(v)) {
            Rat nd = d + edge_length(m[v], m[far]);
            if (dist[far] < 0 || nd < dist[far]) {
                dist[far] = nd;
                queue.emplace(nd, far);
            }
        }
    }
    for (int v = 0; v < n; ++v)
        if (dist[v] < 0)
            throw std::invalid_argument("distance_to_set: vertex '" + g.vertex(v).id +
                                        "' is unreachable from the source set");
    return dist;
}

RateAssignment inner_rates(const WeightedGraph& g, const CycleData& data) {
    RateAssignment out;
    out.multiplicities = data.multiplicities();
    std::vector<Rat> d = distance_to_set(g, out.multiplicities, data.l_nodes);
    out.rates.reserve(d.size());
    for (Rat& x : d) out.rates.push_back(x + 1);
    return out;
}

Result<std::vector<Int>> p_vector(const WeightedGraph& g, const CycleData& data,
                                  const RateAssignment& rates) {
    const int n = g.vertex_count();

    // B = sum_v (m_v q_v - 1) E_v as a rational divisor; then
    // p_v = -(I B)_v + (Z_Gamma . E_v) + l_v, using the canonical pairing in
    // place of the (rational, never materialized) canonical cycle.
    std::vector<Rat> b(n);
    for (int v = 0; v < n; ++v)
        b[v] = Rat(rates.multiplicities[v]) * rates.rates[v] - 1;

    NotLneCertificate cert;
    cert.stage = "rates";
    std::vector<Int> p(n);
    for (int v = 0; v < n; ++v) {
        Rat row = Rat(g.vertex(v).self_intersection) * b[v];
        for (const auto& [e, far] : g.incident(v)) row += b[far];
        const Rat value = -row + Rat(canonical_pairing(g, v)) + Rat(data.l_vector[v]);
        if (denominator(value) != 1) {
            cert.violations.push_back({g.vertex(v).id, "p = " + format_rational(value) +
                                                           " is not an integer"});
            continue;
        }
        if (value < 0) {
            cert.violations.push_back({g.vertex(v).id, "p = " + format_rational(value) +
                                                           " is negative"});
            continue;
        }
        p[v] = numerator(value);
    }
    if (!cert.violations.empty())
        return Result<std::vector<Int>>::rejected(std::move(cert));
    return Result<std::vector<Int>>::accepted(std::move(p));
}

LaplacianVectors laplacian_vectors(const WeightedGraph& g, const CycleData& data,
                                   const RateAssignment& rates, const std::vector<Int>& p) {
    LaplacianVectors out;
    const int n = g.vertex_count();
    out.a.resize(n);
    out.k.resize(n);
    out.l = data.l_vector;
    out.p = p;
    for (int v = 0; v < n; ++v) {
        out.a[v] = Rat(rates.multiplicities[v]) * rates.rates[v];
        out.k[v] = Int(g.valency(v)) + 2 * g.vertex(v).genus - 2;
    }
    return out;
}

std::vector<Rat> laplacian_residual(const WeightedGraph& g, const LaplacianVectors& vecs) {
    const int n = g.vertex_count();
    std::vector<Rat> res(n);
    for (int v = 0; v < n; ++v) {
        Rat row = Rat(g.vertex(v).self_intersection) * vecs.a[v];
        for (const auto& [e, far] : g.incident(v)) row += vecs.a[far];
        res[v] = row - (Rat(vecs.k[v]) + Rat(vecs.l[v]) - Rat(vecs.p[v]));
    }
    return res;
}

}  // namespace lne
