#include <map>
#include <sstream>
#include <stdexcept>

#include "lne/pipeline.hpp"

// DOT rendering. Every stage is emitted as an undirected graph with box
// shaped vertices; arrow decorations become invisible stub nodes attached by
// a directed-looking edge, solid for the l arrows and dashed for the p
// arrows, so that arrow counts are visible in the drawing.

namespace lne {

namespace {

std::string dot_escape(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string quoted(const std::string& raw) { return "\"" + dot_escape(raw) + "\""; }

void emit_arrow_stubs(std::ostringstream& out, const std::string& owner, const std::string& kind,
                      long long count) {
    for (long long k = 0; k < count; ++k) {
        std::string stub = kind + "@" + owner + "@" + std::to_string(k);
        out << "  " << quoted(stub) << " [shape=none, label=\"\"];\n";
        out << "  " << quoted(owner) << " -- " << quoted(stub) << " [dir=forward, arrowhead=vee"
            << (kind == "P" ? ", style=dashed" : "") << "];\n";
    }
}

long long to_count(const std::string& digits) { return std::stoll(digits); }

std::string render_resolution(const GraphFile& graph, const std::string& name,
                              const std::vector<std::string>* mult,
                              const std::vector<std::string>* rates,
                              const std::vector<std::string>* l_by_id_source,
                              const GraphFile* l_source_graph,
                              const std::vector<std::string>* p) {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    out << "  node [shape=box];\n";
    std::map<std::string, std::string> l_by_id;
    if (l_by_id_source && l_source_graph)
        for (size_t i = 0; i < l_source_graph->vertices.size(); ++i)
            l_by_id[l_source_graph->vertices[i].id] = (*l_by_id_source)[i];
    for (size_t i = 0; i < graph.vertices.size(); ++i) {
        const GraphFileVertex& v = graph.vertices[i];
        std::ostringstream label;
        label << v.id << " | e=" << v.self_intersection << " g=" << v.genus;
        if (mult) label << " m=" << (*mult)[i];
        if (rates) label << " q=" << (*rates)[i];
        out << "  " << quoted(v.id) << " [label=" << quoted(label.str()) << "];\n";
    }
    for (size_t i = 0; i < graph.edges.size(); ++i)
        out << "  " << quoted(graph.edges[i].first) << " -- " << quoted(graph.edges[i].second)
            << " [label=\"e" << i << "\"];\n";
    for (const GraphFileVertex& v : graph.vertices) {
        auto it = l_by_id.find(v.id);
        if (it != l_by_id.end()) emit_arrow_stubs(out, v.id, "L", to_count(it->second));
    }
    if (p)
        for (size_t i = 0; i < graph.vertices.size(); ++i)
            emit_arrow_stubs(out, graph.vertices[i].id, "P", to_count((*p)[i]));
    out << "}\n";
    return out.str();
}

}  // namespace

std::string export_dot(const PipelineReport& report, const std::string& stage) {
    if (stage == "input") {
        if (!report.input_graph) throw std::runtime_error("report has no input graph");
        return render_resolution(*report.input_graph, "input",
                                 report.fundamental_cycle ? &*report.fundamental_cycle : nullptr,
                                 report.inner_rates_input ? &*report.inner_rates_input : nullptr,
                                 report.l_vector_input ? &*report.l_vector_input : nullptr,
                                 &*report.input_graph, nullptr);
    }
    if (stage == "refined") {
        if (!report.refined_graph) throw std::runtime_error("report has no refined graph");
        return render_resolution(*report.refined_graph, "refined", &*report.multiplicities,
                                 &*report.inner_rates_refined,
                                 report.l_vector_input ? &*report.l_vector_input : nullptr,
                                 report.input_graph ? &*report.input_graph : nullptr,
                                 &*report.p_vector_refined);
    }
    if (stage == "quotient") {
        if (!report.quotient_classes) throw std::runtime_error("report has no quotient graph");
        std::ostringstream out;
        out << "graph quotient {\n";
        out << "  node [shape=box];\n";
        for (const QuotientClassReport& cls : *report.quotient_classes) {
            std::ostringstream label;
            label << cls.id << " | q=" << cls.rate << " m=" << cls.multiplicity;
            if (cls.is_root) label << " (root)";
            out << "  " << quoted(cls.id) << " [label=" << quoted(label.str())
                << (cls.is_root ? ", peripheries=2" : "") << "];\n";
        }
        for (const auto& [a, b] : *report.quotient_edges)
            out << "  " << quoted(a) << " -- " << quoted(b) << ";\n";
        for (const QuotientClassReport& cls : *report.quotient_classes)
            emit_arrow_stubs(out, cls.id, "P", to_count(cls.arrows));
        out << "}\n";
        return out.str();
    }
    if (stage == "eggers_wall") {
        if (!report.eggers_wall) throw std::runtime_error("report has no eggers-wall tree");
        const EggersWallTree& tree = *report.eggers_wall;
        std::ostringstream out;
        out << "graph eggers_wall {\n";
        out << "  node [shape=box];\n";
        for (const EwNode& node : tree.nodes) {
            if (node.is_leaf) {
                out << "  " << quoted(node.id) << " [shape=none, label=\""
                    << (node.is_root_leaf ? "root" : "") << "\"];\n";
            } else {
                std::ostringstream label;
                label << node.id << " | e=" << format_rational(node.e);
                out << "  " << quoted(node.id) << " [label=" << quoted(label.str()) << "];\n";
            }
        }
        for (const EwNode& node : tree.nodes) {
            if (node.parent < 0) continue;
            out << "  " << quoted(tree.nodes[node.parent].id) << " -- " << quoted(node.id);
            if (node.is_leaf)
                out << " [dir=forward, arrowhead=vee, label=\"i=" << node.parent_i.str() << "\"];\n";
            else
                out << " [label=\"i=" << node.parent_i.str() << "\"];\n";
        }
        out << "}\n";
        return out.str();
    }
    throw std::invalid_argument("unknown dot stage '" + stage +
                                "' (expected input, refined, quotient or eggers_wall)");
}

}  // namespace lne
