#include "causalkb/pipeline/runner.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "causalkb/core/error.hpp"
#include "causalkb/kb/evidence.hpp"
#include "causalkb/rules/evidence_store.hpp"

namespace causalkb::pipeline {

PreparedInstance::PreparedInstance(NetworkInstance instance, std::size_t max_cond)
    : instance_(std::move(instance)),
      tests_(stats::run_all_tests(instance_.data, max_cond)),
      layout_(instance_.vertices().size()),
      family_(instance_.vertices().size(), max_cond) {}

void VariantParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument(fmt::format("alpha {} is outside (0,1)", alpha));
  if (rules::adjacency_predicate(variant) == Predicate::StandardAdj) {
    if (!alpha_adj) throw InvalidArgument(fmt::format("{} requires alpha_adj", rules::to_string(variant)));
    if (!(*alpha_adj > 0.0 && *alpha_adj < 1.0)) {
      throw InvalidArgument(fmt::format("alpha_adj {} is outside (0,1)", *alpha_adj));
    }
  }
}

std::vector<ObservedAtom> assemble_evidence(const PreparedInstance& prepared, const VariantParams& params,
                                            const PipelineOptions& options) {
  params.validate();
  const auto& inst = prepared.instance();
  auto atoms = stats::bin_tests(prepared.tests(), params.alpha, options.binning);
  if (rules::adjacency_predicate(params.variant) == Predicate::TextAdj) {
    if (!inst.kb) {
      throw InvalidArgument(fmt::format("{}: {} requires knowledge-base affinities", inst.name,
                                        rules::to_string(params.variant)));
    }
    const auto text = kb::to_textadj(*inst.kb);
    atoms.insert(atoms.end(), text.begin(), text.end());
  } else {
    const auto binned = stats::bin_tests(prepared.tests(), *params.alpha_adj, options.binning);
    const auto adj = stats::standard_adjacency(binned, prepared.num_vertices());
    atoms.insert(atoms.end(), adj.begin(), adj.end());
  }
  if (rules::has_joint_rules(params.variant)) atoms.insert(atoms.end(), inst.ppi.begin(), inst.ppi.end());
  return atoms;
}

namespace {

GroundProgram ground_with(std::span<const ObservedAtom> atoms, rules::Variant variant,
                          const TargetLayout& layout, const rules::CondSetFamily& family,
                          const PipelineOptions& options) {
  rules::EvidenceStore store(layout.num_vertices());
  store.add(atoms);
  const bool with_ppi =
      rules::has_joint_rules(variant) &&
      std::any_of(atoms.begin(), atoms.end(), [](const ObservedAtom& a) { return a.predicate == Predicate::LocalPPI; });
  GroundProgram program;
  program.rules = rules::builtin_rules(variant, with_ppi, options.weights);
  program.potentials = rules::ground(program.rules, store, layout, family);
  return program;
}

}  // namespace

GroundProgram ground_variant(const PreparedInstance& prepared, const VariantParams& params,
                             const PipelineOptions& options) {
  const auto atoms = assemble_evidence(prepared, params, options);
  return ground_with(atoms, params.variant, prepared.layout(), prepared.family(), options);
}

GroundProgram ground_atoms(std::span<const ObservedAtom> atoms, std::size_t num_vertices, rules::Variant variant,
                           const PipelineOptions& options) {
  const TargetLayout layout(num_vertices);
  const rules::CondSetFamily family(num_vertices, options.max_cond);
  return ground_with(atoms, variant, layout, family, options);
}

infer::MapSolution solve_variant(const PreparedInstance& prepared, const VariantParams& params,
                                 const PipelineOptions& options) {
  const auto program = ground_variant(prepared, params, options);
  return infer::solve_map(rules::to_problem(program.potentials, prepared.layout()), options.solver);
}

EvalReport evaluate_at(const infer::MapSolution& solution, const TargetLayout& layout,
                       std::span<const Edge> gold, double threshold) {
  const auto graph = infer::round_solution(solution, layout, threshold);
  return score_directed(graph.causes, gold);
}

RunResult run_variant(const PreparedInstance& prepared, const VariantParams& params, double threshold,
                      const PipelineOptions& options) {
  const auto program = ground_variant(prepared, params, options);
  RunResult result;
  result.num_potentials = program.potentials.size();
  result.solution = infer::solve_map(rules::to_problem(program.potentials, prepared.layout()), options.solver);
  result.graph = infer::round_solution(result.solution, prepared.layout(), threshold);
  result.report = score_directed(result.graph.causes, prepared.instance().gold);
  return result;
}

AdjacencyReport adjacency_eval(const PreparedInstance& prepared, double alpha_adj, double decision_threshold,
                               const stats::BinningOptions& binning) {
  const auto& inst = prepared.instance();
  if (!inst.kb) throw InvalidArgument(fmt::format("{}: adjacency evaluation requires affinities", inst.name));
  if (!(alpha_adj > 0.0 && alpha_adj < 1.0)) {
    throw InvalidArgument(fmt::format("alpha_adj {} is outside (0,1)", alpha_adj));
  }
  std::vector<Edge> text;
  for (const auto& atom : kb::to_textadj(*inst.kb)) {
    if (atom.truth > decision_threshold) text.push_back({atom.a, atom.b});
  }
  std::vector<Edge> standard;
  const auto binned = stats::bin_tests(prepared.tests(), alpha_adj, binning);
  for (const auto& atom : stats::standard_adjacency(binned, prepared.num_vertices())) {
    if (atom.truth == 1.0) standard.push_back({atom.a, atom.b});
  }
  return {score_undirected(text, inst.gold), score_undirected(standard, inst.gold)};
}

}  // namespace causalkb::pipeline
