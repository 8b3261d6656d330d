#ifndef LNE_PIPELINE_HPP
#define LNE_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "lne/discriminant.hpp"

// File ingestion, pipeline orchestration and report rendering. Graphs travel
// as a small versioned JSON schema; reports are deterministic byte for byte
// for identical inputs and tool version, in JSON, plain text or DOT form.

namespace lne {

inline constexpr const char* kToolVersion = "1.0.0";

struct GraphFileVertex {
    std::string id;
    long long genus = 0;
    long long self_intersection = 0;
};

struct GraphFile {
    int version = 1;
    std::vector<GraphFileVertex> vertices;
    std::vector<std::pair<std::string, std::string>> edges;
};

// Parses and validates the schema; error messages list every problem found,
// not just the first. Edge ids are assigned "e0", "e1", ... in file order.
GraphFile parse_graph_file(const std::string& json_text);
GraphFile graph_file_from_path(const std::string& path);
WeightedGraph build_graph(const GraphFile& file);
WeightedGraph load_graph(const std::string& path);

// Canonical re-serialization; parse_graph_file(serialize(f)) round-trips.
std::string serialize_graph_file(const GraphFile& file);
GraphFile to_graph_file(const WeightedGraph& g);

enum class PipelineStage { validate, zmin, rates, nash, discriminant, report };

struct QuotientClassReport {
    std::string id;
    std::vector<std::string> members;
    std::string rate;
    std::string multiplicity;
    std::string arrows;
    bool contains_node = false;
    bool is_root = false;
    bool is_delta = false;
};

struct BranchReport {
    std::string leaf_id;
    std::vector<std::string> full_exponents;
    std::vector<std::string> index_jump_exponents;
    bool lists_differ = false;
};

struct PipelineReport {
    std::string tool_version;
    std::string input_hash;  // FNV-1a of the canonical input serialization
    PipelineStage requested_stage = PipelineStage::report;

    ValidationReport validation;
    std::optional<NotLneCertificate> certificate;

    // Stage products, present when the pipeline reached them. All vertex
    // indexed data is keyed by vertex id in graph order.
    std::optional<GraphFile> input_graph;
    std::optional<std::vector<std::string>> fundamental_cycle;
    std::optional<std::vector<std::string>> multiplicities;  // refined graph
    std::optional<std::vector<std::string>> l_vector_input;
    std::optional<std::vector<std::string>> l_nodes;
    std::optional<std::string> total_multiplicity;
    std::optional<std::vector<std::string>> inner_rates_input;
    std::optional<std::vector<std::string>> inner_rates_refined;
    std::optional<GraphFile> refined_graph;
    std::optional<std::vector<std::pair<std::string, EdgePosition>>> provenance;
    std::optional<int> blowups_performed;
    std::optional<std::vector<std::string>> p_vector_refined;
    std::optional<std::vector<std::string>> p_nodes;
    std::optional<std::vector<std::string>> local_degrees;
    std::optional<std::vector<QuotientClassReport>> quotient_classes;
    std::optional<std::vector<std::pair<std::string, std::string>>> quotient_edges;
    std::optional<EggersWallTree> eggers_wall;
    std::optional<std::vector<BranchReport>> branches;

    bool not_lne() const { return certificate.has_value(); }
};

// Runs validation and then cycles, rates, refinement and discriminant stages
// in order up to the requested stage, short-circuiting into a certificate
// report whenever a stage rejects the graph.
PipelineReport run_pipeline(const GraphFile& file, PipelineStage upto = PipelineStage::report);

std::string report_to_json(const PipelineReport& report);
std::string report_to_text(const PipelineReport& report);

// DOT rendering of one stage of a report. Vertex labels read
// "id | e=.. g=.. m=.. q=.."; arrows appear as peripheral stubs. Throws
// std::invalid_argument for an unknown stage name and std::runtime_error
// when the report does not contain the requested stage.
std::string export_dot(const PipelineReport& report, const std::string& stage);

}  // namespace lne

#endif
