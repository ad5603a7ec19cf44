#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "causalkb/pipeline/cv.hpp"
#include "causalkb/pipeline/runner.hpp"

namespace causalkb::pipeline {

nlohmann::ordered_json to_json(const EvalReport& report);
nlohmann::ordered_json to_json(const infer::SolverConfig& config);

nlohmann::ordered_json run_report(const std::string& instance, const VariantParams& params, double threshold,
                                  const RunResult& result, const PipelineOptions& options);

/// Config echo, one entry per fold, and the summary line.
nlohmann::ordered_json cv_report(const CvConfig& config, const CvResult& result, const PipelineOptions& options);

nlohmann::ordered_json adjacency_report(const std::string& instance, double alpha_adj, double decision_threshold,
                                        const AdjacencyReport& report);

/// predicate, from, to, truth: every Causes then Anc atom at or above the
/// threshold.
void write_edges_tsv(std::ostream& out, const infer::MapSolution& solution, const TargetLayout& layout,
                     const VertexSet& vertices, double threshold);

}  // namespace causalkb::pipeline
