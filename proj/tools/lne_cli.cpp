#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "lne/pipeline.hpp"

// Command line front end. Each subcommand runs the pipeline up to one stage
// and prints the report. Exit codes: 0 on success, 2 for unusable input
// (file, schema, validation or usage errors), 3 when the graph is rejected
// with a not-LNE certificate, 4 for an internal consistency failure.

namespace {

struct CliOptions {
    std::string input;
    std::string format = "json";
    std::string dot_stage = "input";
};

int run_stage(const CliOptions& opts, lne::PipelineStage stage) {
    lne::GraphFile file = lne::graph_file_from_path(opts.input);
    lne::PipelineReport report = lne::run_pipeline(file, stage);
    if (opts.format == "json") {
        std::cout << lne::report_to_json(report);
    } else if (opts.format == "text") {
        std::cout << lne::report_to_text(report);
    } else {
        std::cout << lne::export_dot(report, opts.dot_stage);
    }
    if (!report.validation.ok) return 2;
    if (report.not_lne()) return 3;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Combinatorial resolution pipeline for candidate LNE surface singularities"};
    app.set_version_flag("--version", std::string(lne::kToolVersion));
    app.require_subcommand(1);

    CliOptions opts;
    const std::map<std::string, lne::PipelineStage> stages = {
        {"validate", lne::PipelineStage::validate},
        {"zmin", lne::PipelineStage::zmin},
        {"rates", lne::PipelineStage::rates},
        {"nash", lne::PipelineStage::nash},
        {"discriminant", lne::PipelineStage::discriminant},
        {"report", lne::PipelineStage::report},
    };
    const std::map<std::string, std::string> blurbs = {
        {"validate", "check the schema and the weighted graph invariants"},
        {"zmin", "compute the fundamental cycle, the l vector and the l nodes"},
        {"rates", "compute inner rates on the input resolution"},
        {"nash", "compute the Nash-refined resolution with p vector and p nodes"},
        {"discriminant", "compute the discriminant quotient and Eggers-Wall tree"},
        {"report", "run every stage and print the full report"},
    };
    for (const auto& [name, stage] : stages) {
        CLI::App* sub = app.add_subcommand(name, blurbs.at(name));
        sub->add_option("--input", opts.input, "graph JSON file")->required();
        sub->add_option("--format", opts.format, "output format")
            ->check(CLI::IsMember({"json", "text", "dot"}));
        sub->add_option("--stage", opts.dot_stage,
                        "graph to draw with --format dot: input, refined, quotient, eggers_wall");
        (void)stage;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    for (const auto& [name, stage] : stages) {
        if (!app.get_subcommand(name)->parsed()) continue;
        try {
            return run_stage(opts, stage);
        } catch (const lne::internal_error& e) {
            std::cerr << "internal error: " << e.what() << "\n";
            return 4;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }
    std::cerr << "error: no subcommand given\n";
    return 2;
}
