#pragma once

#include <optional>
#include <span>
#include <vector>

#include "causalkb/core/model.hpp"
#include "causalkb/infer/admm.hpp"
#include "causalkb/pipeline/evaluate.hpp"
#include "causalkb/pipeline/instance.hpp"
#include "causalkb/rules/grounder.hpp"
#include "causalkb/rules/rules.hpp"
#include "causalkb/stats/independence.hpp"

namespace causalkb::pipeline {

inline constexpr double kAdjacencyDecisionThreshold = 0.5;

struct PipelineOptions {
  std::size_t max_cond = kDefaultMaxCond;
  stats::BinningOptions binning;
  infer::SolverConfig solver;
  rules::RuleWeights weights;
};

/// An instance with its independence tests computed once; everything that
/// depends on α is derived from these.
class PreparedInstance {
 public:
  PreparedInstance(NetworkInstance instance, std::size_t max_cond = kDefaultMaxCond);

  const NetworkInstance& instance() const noexcept { return instance_; }
  const std::string& name() const noexcept { return instance_.name; }
  std::size_t num_vertices() const noexcept { return instance_.vertices().size(); }
  std::size_t max_cond() const noexcept { return family_.max_cond(); }
  std::span<const stats::TestResult> tests() const noexcept { return tests_; }
  const TargetLayout& layout() const noexcept { return layout_; }
  const rules::CondSetFamily& family() const noexcept { return family_; }

 private:
  NetworkInstance instance_;
  std::vector<stats::TestResult> tests_;
  TargetLayout layout_;
  rules::CondSetFamily family_;
};

struct VariantParams {
  rules::Variant variant = rules::Variant::CausPSL;
  double alpha = 0.05;
  std::optional<double> alpha_adj;  // ObsPSL family only

  /// Throws InvalidArgument for α outside (0,1) or a missing α_adj.
  void validate() const;
};

/// Binned tests at α, the variant's adjacency atoms, and PPI atoms when the
/// variant has joint rules. Throws InvalidArgument when CausPSL lacks a KB.
std::vector<ObservedAtom> assemble_evidence(const PreparedInstance& prepared, const VariantParams& params,
                                            const PipelineOptions& options = {});

struct GroundProgram {
  std::vector<rules::RuleTemplate> rules;
  std::vector<rules::GroundPotential> potentials;
};

GroundProgram ground_variant(const PreparedInstance& prepared, const VariantParams& params,
                             const PipelineOptions& options = {});

/// Grounds a variant's rules against explicit evidence, e.g. noise-free atoms.
/// The PPI rule is included when the variant has joint rules and some
/// LocalPPI atom is present.
GroundProgram ground_atoms(std::span<const ObservedAtom> atoms, std::size_t num_vertices, rules::Variant variant,
                           const PipelineOptions& options = {});

infer::MapSolution solve_variant(const PreparedInstance& prepared, const VariantParams& params,
                                 const PipelineOptions& options = {});

/// Rounds Causes at `threshold` and scores it as directed retrieval.
EvalReport evaluate_at(const infer::MapSolution& solution, const TargetLayout& layout,
                       std::span<const Edge> gold, double threshold);

struct RunResult {
  infer::MapSolution solution;
  infer::RoundedGraph graph;
  EvalReport report;
  std::size_t num_potentials = 0;
};

RunResult run_variant(const PreparedInstance& prepared, const VariantParams& params, double threshold,
                      const PipelineOptions& options = {});

struct AdjacencyReport {
  EvalReport textadj;
  EvalReport standard;
};

/// Undirected scoring of TextAdj (truth > decision threshold) and
/// StandardAdj (truth 1) against the skeleton of the gold graph.
AdjacencyReport adjacency_eval(const PreparedInstance& prepared, double alpha_adj,
                               double decision_threshold = kAdjacencyDecisionThreshold,
                               const stats::BinningOptions& binning = {});

}  // namespace causalkb::pipeline
