#include "lne/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"

namespace lne {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string stage_name(PipelineStage stage) {
    switch (stage) {
        case PipelineStage::validate: return "validate";
        case PipelineStage::zmin: return "zmin";
        case PipelineStage::rates: return "rates";
        case PipelineStage::nash: return "nash";
        case PipelineStage::discriminant: return "discriminant";
        case PipelineStage::report: return "report";
    }
    return "?";
}

std::string hash_hex(std::uint64_t value) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << value;
    return out.str();
}

std::vector<std::string> int_strings(const std::vector<Int>& values) {
    std::vector<std::string> out;
    out.reserve(values.size());
    for (const Int& v : values) out.push_back(v.str());
    return out;
}

std::vector<std::string> rat_strings(const std::vector<Rat>& values) {
    std::vector<std::string> out;
    out.reserve(values.size());
    for (const Rat& v : values) out.push_back(format_rational(v));
    return out;
}

std::vector<std::string> id_strings(const WeightedGraph& g, const std::vector<int>& indices) {
    std::vector<std::string> out;
    out.reserve(indices.size());
    for (int v : indices) out.push_back(g.vertex(v).id);
    return out;
}

}  // namespace

GraphFile parse_graph_file(const std::string& json_text) {
    std::vector<std::string> problems;
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const ordered_json::parse_error& e) {
        throw std::runtime_error(std::string("input is not valid JSON: ") + e.what());
    }

    GraphFile file;
    if (!j.is_object()) {
        throw std::runtime_error("input must be a JSON object");
    }
    if (!j.contains("version") || !j["version"].is_number_integer() || j["version"] != 1)
        problems.push_back("missing or unsupported schema version (expected 1)");
    if (!j.contains("vertices") || !j["vertices"].is_array())
        problems.push_back("missing 'vertices' array");
    if (!j.contains("edges") || !j["edges"].is_array())
        problems.push_back("missing 'edges' array");
    if (!problems.empty()) throw std::runtime_error("schema errors:\n  " + [&] {
        std::string joined;
        for (size_t i = 0; i < problems.size(); ++i)
            joined += (i ? "\n  " : "") + problems[i];
        return joined;
    }());

    std::set<std::string> ids;
    for (size_t i = 0; i < j["vertices"].size(); ++i) {
        const auto& jv = j["vertices"][i];
        const std::string where = "vertices[" + std::to_string(i) + "]";
        if (!jv.is_object() || !jv.contains("id") || !jv["id"].is_string() ||
            !jv.contains("genus") || !jv["genus"].is_number_integer() ||
            !jv.contains("self_intersection") || !jv["self_intersection"].is_number_integer()) {
            problems.push_back(where + " must be {id: string, genus: int, self_intersection: int}");
            continue;
        }
        GraphFileVertex v;
        v.id = jv["id"].get<std::string>();
        v.genus = jv["genus"].get<long long>();
        v.self_intersection = jv["self_intersection"].get<long long>();
        if (!ids.insert(v.id).second) problems.push_back("duplicate vertex id '" + v.id + "'");
        if (v.genus < 0) problems.push_back("vertex '" + v.id + "' has negative genus");
        if (v.self_intersection >= 0)
            problems.push_back("vertex '" + v.id + "' has self-intersection " +
                               std::to_string(v.self_intersection) + "; it must be negative");
        file.vertices.push_back(std::move(v));
    }
    for (size_t i = 0; i < j["edges"].size(); ++i) {
        const auto& je = j["edges"][i];
        const std::string edge_id = "e" + std::to_string(i);
        if (!je.is_array() || je.size() != 2 || !je[0].is_string() || !je[1].is_string()) {
            problems.push_back("edges[" + std::to_string(i) + "] must be a pair of vertex ids");
            continue;
        }
        std::string a = je[0].get<std::string>();
        std::string b = je[1].get<std::string>();
        if (!ids.count(a))
            problems.push_back("edge '" + edge_id + "' references unknown vertex '" + a + "'");
        if (!ids.count(b))
            problems.push_back("edge '" + edge_id + "' references unknown vertex '" + b + "'");
        if (a == b)
            problems.push_back("edge '" + edge_id + "' is a loop at vertex '" + a + "'");
        file.edges.emplace_back(std::move(a), std::move(b));
    }
    if (!problems.empty()) {
        std::string joined;
        for (size_t i = 0; i < problems.size(); ++i) joined += (i ? "\n  " : "") + problems[i];
        throw std::runtime_error("input file problems:\n  " + joined);
    }
    return file;
}

GraphFile graph_file_from_path(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_graph_file(buffer.str());
}

WeightedGraph build_graph(const GraphFile& file) {
    WeightedGraph g;
    for (const GraphFileVertex& v : file.vertices)
        g.add_vertex(v.id, Int(v.genus), Int(v.self_intersection));
    int serial = 0;
    for (const auto& [a, b] : file.edges)
        g.add_edge("e" + std::to_string(serial++), a, b);
    return g;
}

WeightedGraph load_graph(const std::string& path) {
    return build_graph(graph_file_from_path(path));
}

std::string serialize_graph_file(const GraphFile& file) {
    ordered_json j;
    j["version"] = file.version;
    j["vertices"] = ordered_json::array();
    for (const GraphFileVertex& v : file.vertices) {
        ordered_json jv;
        jv["id"] = v.id;
        jv["genus"] = v.genus;
        jv["self_intersection"] = v.self_intersection;
        j["vertices"].push_back(std::move(jv));
    }
    j["edges"] = ordered_json::array();
    for (const auto& [a, b] : file.edges) j["edges"].push_back(ordered_json::array({a, b}));
    return j.dump();
}

GraphFile to_graph_file(const WeightedGraph& g) {
    GraphFile file;
    for (const Vertex& v : g.vertices()) {
        GraphFileVertex out;
        out.id = v.id;
        out.genus = v.genus.convert_to<long long>();
        out.self_intersection = v.self_intersection.convert_to<long long>();
        file.vertices.push_back(std::move(out));
    }
    for (const Edge& e : g.edges())
        file.edges.emplace_back(g.vertex(e.a).id, g.vertex(e.b).id);
    return file;
}

PipelineReport run_pipeline(const GraphFile& file, PipelineStage upto) {
    PipelineReport report;
    report.tool_version = kToolVersion;
    report.input_hash = hash_hex(fnv1a64(serialize_graph_file(file)));
    report.requested_stage = upto;
    report.input_graph = file;

    WeightedGraph g = build_graph(file);
    report.validation = validate_graph(g);
    if (!report.validation.ok || upto == PipelineStage::validate) return report;

    // Cycles stage.
    Result<CycleData> cycles = lne_cycle_data(g);
    if (!cycles) {
        report.certificate = cycles.certificate();
        return report;
    }
    const CycleData& data = cycles.value();
    report.fundamental_cycle = int_strings(data.z_min.coeff);
    report.l_vector_input = int_strings(data.l_vector);
    report.l_nodes = id_strings(g, data.l_nodes);
    report.total_multiplicity = total_multiplicity(g, data).str();
    if (upto == PipelineStage::zmin) return report;

    // Metric stage: rates and the p-vector of the input resolution. The
    // closed form can already reject here, before any blowup happens.
    RateAssignment rates = inner_rates(g, data);
    report.inner_rates_input = rat_strings(rates.rates);
    Result<std::vector<Int>> coarse_p = p_vector(g, data, rates);
    if (!coarse_p) {
        report.certificate = coarse_p.certificate();
        return report;
    }
    {
        LaplacianVectors vecs = laplacian_vectors(g, data, rates, coarse_p.value());
        for (const Rat& r : laplacian_residual(g, vecs))
            if (r != 0)
                throw internal_error("Laplacian identity fails on the input graph");
    }
    if (upto == PipelineStage::rates) return report;

    // Refinement stage.
    Result<RefinedGraph> refined_result = nash_refine(g, data, rates);
    if (!refined_result) {
        report.certificate = refined_result.certificate();
        return report;
    }
    const RefinedGraph& refined = refined_result.value();
    report.refined_graph = to_graph_file(refined.graph);
    report.multiplicities = int_strings(refined.rates.multiplicities);
    report.inner_rates_refined = rat_strings(refined.rates.rates);
    report.p_vector_refined = int_strings(refined.p_vec);
    report.p_nodes = id_strings(refined.graph, refined.p_node_indices);
    report.blowups_performed = refined.blowups_performed;
    {
        std::vector<std::pair<std::string, EdgePosition>> prov(refined.provenance.begin(),
                                                               refined.provenance.end());
        std::sort(prov.begin(), prov.end(), [](const auto& x, const auto& y) {
            if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
            return x.first < y.first;
        });
        report.provenance = std::move(prov);
    }
    {
        std::vector<std::string> degrees;
        for (int v = 0; v < refined.graph.vertex_count(); ++v)
            degrees.push_back(local_degree(refined, v).str());
        report.local_degrees = std::move(degrees);
    }

    // The arrow-weighted p totals on the input and refined resolutions must
    // match, and the Laplacian identity must hold again on the refined graph.
    {
        Int before = 0;
        for (int v = 0; v < g.vertex_count(); ++v)
            before += data.multiplicities()[v] * coarse_p.value()[v];
        Int after = 0;
        for (int v = 0; v < refined.graph.vertex_count(); ++v)
            after += refined.rates.multiplicities[v] * refined.p_vec[v];
        if (before != after)
            throw internal_error("refinement changed the weighted p total from " +
                                 before.str() + " to " + after.str());
        LaplacianVectors vecs = laplacian_vectors(refined.graph, refined.cycles, refined.rates,
                                                  refined.p_vec);
        for (const Rat& r : laplacian_residual(refined.graph, vecs))
            if (r != 0)
                throw internal_error("Laplacian identity fails on the refined graph");
    }
    if (upto == PipelineStage::nash) return report;

    // Discriminant stage.
    std::vector<int> nodes = node_set(refined);
    PrincipalPart pp = principal_part(refined, nodes);
    Partition partition = equivalence_classes(refined, pp);
    Result<QuotientGraph> quotient = quotient_graph(refined, pp, partition);
    if (!quotient) {
        report.certificate = quotient.certificate();
        return report;
    }
    const QuotientGraph& q = quotient.value();
    {
        std::vector<QuotientClassReport> classes;
        for (const QuotientClass& cls : q.classes) {
            QuotientClassReport row;
            row.id = cls.id;
            row.members = id_strings(refined.graph, cls.members);
            row.rate = format_rational(cls.rate);
            row.multiplicity = cls.multiplicity.str();
            row.arrows = cls.arrows.str();
            row.contains_node = cls.contains_node;
            row.is_root = cls.is_root;
            row.is_delta = cls.is_delta;
            classes.push_back(std::move(row));
        }
        report.quotient_classes = std::move(classes);
        std::vector<std::pair<std::string, std::string>> edges;
        for (const auto& [a, b] : q.edges)
            edges.emplace_back(q.classes[a].id, q.classes[b].id);
        report.quotient_edges = std::move(edges);
    }
    report.eggers_wall = eggers_wall_tree(q);
    {
        std::vector<BranchReport> branches;
        for (const BranchExponents& b : branch_exponent_lists(*report.eggers_wall)) {
            BranchReport row;
            row.leaf_id = b.leaf_id;
            row.full_exponents = rat_strings(b.full);
            row.index_jump_exponents = rat_strings(b.at_index_jumps);
            row.lists_differ = b.lists_differ;
            branches.push_back(std::move(row));
        }
        report.branches = std::move(branches);
    }
    return report;
}

namespace {

ordered_json graph_file_json(const GraphFile& file) {
    return ordered_json::parse(serialize_graph_file(file));
}

ordered_json keyed_by_vertex(const GraphFile& file, const std::vector<std::string>& values) {
    ordered_json out = ordered_json::object();
    for (size_t i = 0; i < file.vertices.size(); ++i) out[file.vertices[i].id] = values[i];
    return out;
}

}  // namespace

std::string report_to_json(const PipelineReport& report) {
    ordered_json j;
    j["tool_version"] = report.tool_version;
    j["input_hash"] = report.input_hash;
    j["stage"] = stage_name(report.requested_stage);
    j["validation"] = {{"ok", report.validation.ok}, {"problems", report.validation.problems}};
    if (report.certificate) {
        ordered_json cert;
        cert["stage"] = report.certificate->stage;
        cert["violations"] = ordered_json::array();
        for (const auto& v : report.certificate->violations)
            cert["violations"].push_back({{"vertex", v.vertex}, {"rule", v.rule}});
        j["not_lne_certificate"] = std::move(cert);
    } else {
        j["not_lne_certificate"] = nullptr;
    }
    if (report.input_graph) j["input_graph"] = graph_file_json(*report.input_graph);
    if (report.fundamental_cycle)
        j["fundamental_cycle"] = keyed_by_vertex(*report.input_graph, *report.fundamental_cycle);
    if (report.l_vector_input)
        j["l_vector"] = keyed_by_vertex(*report.input_graph, *report.l_vector_input);
    if (report.l_nodes) j["l_nodes"] = *report.l_nodes;
    if (report.total_multiplicity) j["total_multiplicity"] = *report.total_multiplicity;
    if (report.inner_rates_refined && report.refined_graph)
        j["inner_rates"] = keyed_by_vertex(*report.refined_graph, *report.inner_rates_refined);
    else if (report.inner_rates_input)
        j["inner_rates"] = keyed_by_vertex(*report.input_graph, *report.inner_rates_input);
    if (report.refined_graph) {
        j["refined_graph"] = graph_file_json(*report.refined_graph);
        j["multiplicities"] = keyed_by_vertex(*report.refined_graph, *report.multiplicities);
        j["blowups"] = *report.blowups_performed;
        ordered_json prov = ordered_json::array();
        for (const auto& [vertex, pos] : *report.provenance)
            prov.push_back({{"vertex", vertex},
                            {"parent_edge", pos.parent_edge},
                            {"position", format_rational(pos.t)}});
        j["provenance"] = std::move(prov);
        j["p_vector"] = keyed_by_vertex(*report.refined_graph, *report.p_vector_refined);
        j["p_nodes"] = *report.p_nodes;
        j["local_degrees"] = keyed_by_vertex(*report.refined_graph, *report.local_degrees);
    }
    if (report.quotient_classes) {
        ordered_json qj;
        qj["classes"] = ordered_json::array();
        for (const QuotientClassReport& cls : *report.quotient_classes) {
            ordered_json row;
            row["id"] = cls.id;
            row["members"] = cls.members;
            row["rate"] = cls.rate;
            row["multiplicity"] = cls.multiplicity;
            row["arrows"] = cls.arrows;
            row["contains_node"] = cls.contains_node;
            row["is_root"] = cls.is_root;
            row["is_delta"] = cls.is_delta;
            qj["classes"].push_back(std::move(row));
        }
        qj["edges"] = ordered_json::array();
        for (const auto& [a, b] : *report.quotient_edges)
            qj["edges"].push_back(ordered_json::array({a, b}));
        j["quotient"] = std::move(qj);
    }
    if (report.eggers_wall) {
        ordered_json nodes = ordered_json::array();
        for (const EwNode& node : report.eggers_wall->nodes) {
            ordered_json row;
            row["id"] = node.id;
            if (node.parent >= 0) {
                row["parent"] = report.eggers_wall->nodes[node.parent].id;
                row["i"] = node.parent_i.str();
            } else {
                row["parent"] = nullptr;
            }
            if (!node.is_leaf) row["e"] = format_rational(node.e);
            row["leaf"] = node.is_leaf;
            if (node.is_leaf) row["root_leaf"] = node.is_root_leaf;
            if (!node.is_leaf) row["from_node_set"] = node.from_node_set;
            nodes.push_back(std::move(row));
        }
        j["eggers_wall"] = {{"nodes", std::move(nodes)}};
    }
    if (report.branches) {
        ordered_json branches = ordered_json::array();
        for (const BranchReport& b : *report.branches) {
            ordered_json row;
            row["leaf"] = b.leaf_id;
            row["exponents"] = b.full_exponents;
            row["exponents_at_index_jumps"] = b.index_jump_exponents;
            row["lists_differ"] = b.lists_differ;
            branches.push_back(std::move(row));
        }
        j["branches"] = std::move(branches);
    }
    return j.dump(2) + "\n";
}

std::string report_to_text(const PipelineReport& report) {
    std::ostringstream out;
    out << "tool version " << report.tool_version << ", input hash " << report.input_hash
        << ", stage " << stage_name(report.requested_stage) << "\n";
    out << "validation: " << (report.validation.ok ? "ok" : "FAILED") << "\n";
    for (const std::string& p : report.validation.problems) out << "  problem: " << p << "\n";
    if (report.certificate) out << report.certificate->describe() << "\n";
    if (!report.input_graph) return out.str();
    const GraphFile& in = *report.input_graph;

    auto vertex_table = [&](const GraphFile& file, const char* title,
                            const std::vector<std::string>& values) {
        out << title << ":";
        for (size_t i = 0; i < file.vertices.size(); ++i)
            out << " " << file.vertices[i].id << "=" << values[i];
        out << "\n";
    };

    if (report.fundamental_cycle) vertex_table(in, "fundamental cycle", *report.fundamental_cycle);
    if (report.l_vector_input) vertex_table(in, "l vector", *report.l_vector_input);
    if (report.l_nodes) {
        out << "l nodes:";
        for (const std::string& id : *report.l_nodes) out << " " << id;
        out << "\n";
    }
    if (report.total_multiplicity) out << "total multiplicity: " << *report.total_multiplicity << "\n";
    if (report.refined_graph) {
        const GraphFile& rg = *report.refined_graph;
        out << "refined graph: " << rg.vertices.size() << " vertices, " << rg.edges.size()
            << " edges, " << *report.blowups_performed << " blowups\n";
        out << "  vertices:";
        for (const GraphFileVertex& v : rg.vertices)
            out << " " << v.id << "(e=" << v.self_intersection << ",g=" << v.genus << ")";
        out << "\n  edges:";
        for (const auto& [a, b] : rg.edges) out << " [" << a << "," << b << "]";
        out << "\n";
        for (const auto& [vertex, pos] : *report.provenance)
            out << "  new vertex " << vertex << " on edge " << pos.parent_edge << " at position "
                << format_rational(pos.t) << "\n";
        vertex_table(rg, "multiplicities", *report.multiplicities);
        vertex_table(rg, "inner rates", *report.inner_rates_refined);
        vertex_table(rg, "p vector", *report.p_vector_refined);
        out << "p nodes:";
        for (const std::string& id : *report.p_nodes) out << " " << id;
        out << "\n";
        vertex_table(rg, "local degrees", *report.local_degrees);
    } else if (report.inner_rates_input) {
        vertex_table(in, "inner rates", *report.inner_rates_input);
    }
    if (report.quotient_classes) {
        out << "quotient classes:\n";
        for (const QuotientClassReport& cls : *report.quotient_classes) {
            out << "  " << cls.id << ": members {";
            for (size_t i = 0; i < cls.members.size(); ++i)
                out << (i ? " " : "") << cls.members[i];
            out << "} rate " << cls.rate << " multiplicity " << cls.multiplicity << " arrows "
                << cls.arrows;
            if (cls.is_root) out << " [root]";
            if (cls.is_delta) out << " [delta]";
            out << "\n";
        }
        out << "quotient edges:";
        for (const auto& [a, b] : *report.quotient_edges) out << " [" << a << "," << b << "]";
        out << "\n";
    }
    if (report.eggers_wall) {
        out << "eggers-wall tree:\n";
        for (const EwNode& node : report.eggers_wall->nodes) {
            out << "  " << node.id;
            if (node.parent >= 0)
                out << " -> parent " << report.eggers_wall->nodes[node.parent].id << " (i="
                    << node.parent_i.str() << ")";
            if (!node.is_leaf) out << " e=" << format_rational(node.e);
            if (node.is_root_leaf) out << " [root leaf]";
            else if (node.is_leaf) out << " [branch]";
            out << "\n";
        }
    }
    if (report.branches) {
        for (const BranchReport& b : *report.branches) {
            out << "branch " << b.leaf_id << ": exponents [";
            for (size_t i = 0; i < b.full_exponents.size(); ++i)
                out << (i ? " " : "") << b.full_exponents[i];
            out << "] at index jumps [";
            for (size_t i = 0; i < b.index_jump_exponents.size(); ++i)
                out << (i ? " " : "") << b.index_jump_exponents[i];
            out << "]" << (b.lists_differ ? " (lists differ)" : "") << "\n";
        }
    }
    return out.str();
}

}  // namespace lne
