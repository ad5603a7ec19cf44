#include "causalkb/pipeline/report.hpp"

#include <ostream>

#include "causalkb/io/text.hpp"

namespace causalkb::pipeline {

using nlohmann::ordered_json;

ordered_json to_json(const EvalReport& r) {
  ordered_json j;
  j["true_positives"] = r.true_positives;
  j["false_positives"] = r.false_positives;
  j["false_negatives"] = r.false_negatives;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["f1"] = r.f1;
  return j;
}

ordered_json to_json(const infer::SolverConfig& c) {
  ordered_json j;
  j["rho"] = c.rho;
  j["max_iters"] = c.max_iters;
  j["eps_abs"] = c.eps_abs;
  j["eps_rel"] = c.eps_rel;
  j["initial_value"] = c.initial_value;
  return j;
}

namespace {

ordered_json options_json(const PipelineOptions& o) {
  ordered_json j;
  j["max_cond"] = o.max_cond;
  j["skew_rescale"] = o.binning.skew_rescale;
  j["weights"] = {{"base", o.weights.base}, {"acyclic", o.weights.acyclic}, {"ppi", o.weights.ppi}};
  j["solver"] = to_json(o.solver);
  return j;
}

ordered_json optional_number(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

}  // namespace

ordered_json run_report(const std::string& instance, const VariantParams& params, double threshold,
                        const RunResult& result, const PipelineOptions& options) {
  ordered_json j;
  j["instance"] = instance;
  j["variant"] = std::string(rules::to_string(params.variant));
  j["alpha"] = params.alpha;
  j["alpha_adj"] = optional_number(params.alpha_adj);
  j["threshold"] = threshold;
  j["options"] = options_json(options);
  j["report"] = to_json(result.report);
  const auto& s = result.solution;
  j["solver"] = {{"potentials", result.num_potentials},
                 {"iterations", s.iterations},
                 {"converged", s.converged},
                 {"objective", s.objective},
                 {"primal_residual", s.primal_residual},
                 {"dual_residual", s.dual_residual},
                 {"free_variables", s.free_variables.size()}};
  j["predicted_causes"] = result.graph.causes.size();
  j["predicted_ancestors"] = result.graph.ancestors.size();
  return j;
}

ordered_json cv_report(const CvConfig& config, const CvResult& result, const PipelineOptions& options) {
  ordered_json j;
  ordered_json cfg;
  cfg["variant"] = std::string(rules::to_string(config.variant));
  cfg["alphas"] = config.alphas;
  if (rules::adjacency_predicate(config.variant) == Predicate::StandardAdj) cfg["alpha_adjs"] = config.alpha_adjs;
  cfg["thresholds"] = config.thresholds;
  cfg["options"] = options_json(options);
  j["config"] = std::move(cfg);
  ordered_json folds = ordered_json::array();
  for (const auto& f : result.folds) {
    ordered_json fj;
    fj["fold"] = f.held_out;
    fj["held_out"] = f.instance;
    fj["selected"] = {{"alpha", f.selection.alpha},
                      {"alpha_adj", optional_number(f.selection.alpha_adj)},
                      {"threshold", f.selection.threshold},
                      {"training_mean_f1", f.selection.mean_f1}};
    fj["report"] = to_json(f.report);
    folds.push_back(std::move(fj));
  }
  j["folds"] = std::move(folds);
  j["summary"] = {{"mean_f1", result.summary.mean},
                  {"stdev_f1", result.summary.stdev},
                  {"text", result.summary.text}};
  return j;
}

ordered_json adjacency_report(const std::string& instance, double alpha_adj, double decision_threshold,
                              const AdjacencyReport& report) {
  ordered_json j;
  j["instance"] = instance;
  j["alpha_adj"] = alpha_adj;
  j["textadj_threshold"] = decision_threshold;
  j["textadj"] = to_json(report.textadj);
  j["standard_adj"] = to_json(report.standard);
  return j;
}

void write_edges_tsv(std::ostream& out, const infer::MapSolution& solution, const TargetLayout& layout,
                     const VertexSet& vertices, double threshold) {
  out << "predicate\tfrom\tto\ttruth\n";
  for (std::uint32_t i = 0; i < solution.y.size(); ++i) {
    if (solution.y[i] < threshold) continue;
    const auto atom = layout.atom(i);
    out << to_string(atom.predicate) << '\t' << vertices.name(atom.from) << '\t' << vertices.name(atom.to)
        << '\t' << io::format_double(solution.y[i]) << '\n';
  }
}

}  // namespace causalkb::pipeline
