// causalkb: causal discovery from independence tests and knowledge-base evidence.
//
// Exit codes: 0 success, 1 runtime error, 2 usage error.

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "causalkb/core/error.hpp"
#include "causalkb/infer/admm.hpp"
#include "causalkb/io/text.hpp"
#include "causalkb/pipeline/cv.hpp"
#include "causalkb/pipeline/instance.hpp"
#include "causalkb/pipeline/report.hpp"
#include "causalkb/pipeline/runner.hpp"
#include "causalkb/rules/grounder.hpp"
#include "causalkb/stats/independence.hpp"

namespace fs = std::filesystem;
using namespace causalkb;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::vector<std::string> manifests;
  std::string variant = "CausPSL";
  double alpha = 0.05;
  std::optional<double> alpha_adj;
  double threshold = 0.5;
  std::size_t max_cond = kDefaultMaxCond;
  bool no_skew_rescale = false;
  std::vector<double> alphas = pipeline::default_alpha_grid();
  std::vector<double> alpha_adjs = pipeline::default_alpha_grid();
  std::vector<double> thresholds = pipeline::default_threshold_grid();
  infer::SolverConfig solver;
  std::string iteration_log;
  double textadj_threshold = pipeline::kAdjacencyDecisionThreshold;
  pipeline::SynthSpec synth;
  std::string out = ".";
};

void require_open_unit(double v, const char* flag) {
  if (!(v > 0.0 && v < 1.0)) throw UsageError(fmt::format("{} must be in (0,1), got {}", flag, v));
}

void require_unit(double v, const char* flag) {
  if (!(v >= 0.0 && v <= 1.0)) throw UsageError(fmt::format("{} must be in [0,1], got {}", flag, v));
}

rules::Variant variant_of(const Options& o) {
  const auto v = rules::parse_variant(o.variant);
  if (!v) throw UsageError(fmt::format("unknown variant '{}'", o.variant));
  return *v;
}

bool needs_alpha_adj(rules::Variant v) { return rules::adjacency_predicate(v) == Predicate::StandardAdj; }

pipeline::VariantParams params_of(const Options& o) {
  const auto variant = variant_of(o);
  require_open_unit(o.alpha, "--alpha");
  if (needs_alpha_adj(variant)) {
    if (!o.alpha_adj) throw UsageError(fmt::format("{} requires --alpha-adj", o.variant));
    require_open_unit(*o.alpha_adj, "--alpha-adj");
  }
  return {variant, o.alpha, needs_alpha_adj(variant) ? o.alpha_adj : std::nullopt};
}

pipeline::PipelineOptions pipeline_options(const Options& o) {
  pipeline::PipelineOptions p;
  p.max_cond = o.max_cond;
  p.binning.skew_rescale = !o.no_skew_rescale;
  p.solver = o.solver;
  p.solver.observer = nullptr;
  try {
    p.solver.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  return p;
}

const std::string& single_manifest(const Options& o) {
  if (o.manifests.size() != 1) throw UsageError("exactly one --manifest is required");
  return o.manifests.front();
}

fs::path output_dir(const Options& o) {
  const fs::path dir(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw IoError(fmt::format("cannot create output directory '{}'", dir.string()));
  return dir;
}

void write_json(const fs::path& path, const nlohmann::ordered_json& j) {
  io::write_atomically(path, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

int cmd_tests(const Options& o) {
  require_open_unit(o.alpha, "--alpha");
  const auto& manifest = single_manifest(o);
  const auto p = pipeline_options(o);
  const pipeline::PreparedInstance prepared(pipeline::load_instance(fs::path(manifest)), o.max_cond);
  const auto atoms = stats::bin_tests(prepared.tests(), o.alpha, p.binning);
  std::size_t dependent = 0;
  for (const auto& a : atoms) dependent += a.predicate == Predicate::Dep || a.predicate == Predicate::CondDep;

  const auto dir = output_dir(o);
  const auto& vertices = prepared.instance().vertices();
  io::write_atomically(dir / "tests.tsv",
                       [&](std::ostream& out) { stats::write_tests_tsv(out, prepared.tests(), vertices); });
  io::write_atomically(dir / "atoms.tsv", [&](std::ostream& out) { stats::write_atoms_tsv(out, atoms, vertices); });
  fmt::print("{}: {} tests, {} dependent, {} independent at alpha={}\n", prepared.name(), prepared.tests().size(),
             dependent, atoms.size() - dependent, o.alpha);
  return 0;
}

int cmd_ground(const Options& o) {
  const auto params = params_of(o);
  const auto& manifest = single_manifest(o);
  const auto p = pipeline_options(o);
  const pipeline::PreparedInstance prepared(pipeline::load_instance(fs::path(manifest)), o.max_cond);
  const auto program = pipeline::ground_variant(prepared, params, p);

  const auto dir = output_dir(o);
  io::write_atomically(dir / "ground.tsv", [&](std::ostream& out) {
    rules::write_ground_dump(out, program.rules, program.potentials, prepared.instance().vertices());
  });
  const auto candidates = rules::count_groundings(program.rules, prepared.num_vertices(), prepared.family());
  std::vector<std::size_t> kept(program.rules.size(), 0);
  for (const auto& g : program.potentials) ++kept[g.rule];
  for (std::size_t r = 0; r < program.rules.size(); ++r) {
    fmt::print("{}\tcandidates {}\tkept {}\n", program.rules[r].id, candidates[r], kept[r]);
  }
  fmt::print("{}: {} potentials\n", prepared.name(), program.potentials.size());
  return 0;
}

int cmd_run(const Options& o) {
  const auto params = params_of(o);
  require_unit(o.threshold, "--threshold");
  const auto& manifest = single_manifest(o);
  auto p = pipeline_options(o);
  std::ostringstream log;
  if (!o.iteration_log.empty()) {
    infer::write_iteration_log_header(log);
    p.solver.observer = [&log](const infer::IterationRecord& r) { infer::write_iteration_log_row(log, r); };
  }
  const pipeline::PreparedInstance prepared(pipeline::load_instance(fs::path(manifest)), o.max_cond);
  const auto result = pipeline::run_variant(prepared, params, o.threshold, p);

  const auto dir = output_dir(o);
  io::write_atomically(dir / "edges.tsv", [&](std::ostream& out) {
    pipeline::write_edges_tsv(out, result.solution, prepared.layout(), prepared.instance().vertices(), o.threshold);
  });
  write_json(dir / "report.json", pipeline::run_report(prepared.name(), params, o.threshold, result, p));
  if (!o.iteration_log.empty()) {
    io::write_atomically(o.iteration_log, [&](std::ostream& out) { out << log.str(); });
  }
  const auto& r = result.report;
  fmt::print("{}: {} precision={:.3f} recall={:.3f} f1={:.3f} ({} iterations, converged={})\n", prepared.name(),
             o.variant, r.precision, r.recall, r.f1, result.solution.iterations, result.solution.converged);
  return 0;
}

int cmd_cv(const Options& o) {
  if (o.manifests.size() < 2) throw UsageError("cv needs at least two --manifest values");
  pipeline::CvConfig config;
  config.variant = variant_of(o);
  config.alphas = o.alphas;
  config.alpha_adjs = o.alpha_adjs;
  config.thresholds = o.thresholds;
  try {
    config.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const auto p = pipeline_options(o);
  std::vector<pipeline::PreparedInstance> instances;
  for (const auto& m : o.manifests) instances.emplace_back(pipeline::load_instance(fs::path(m)), o.max_cond);
  const auto result = pipeline::cross_validate(instances, config, p);

  const auto dir = output_dir(o);
  write_json(dir / "cv_report.json", pipeline::cv_report(config, result, p));
  for (const auto& f : result.folds) {
    fmt::print("fold {} ({}): alpha={} threshold={} f1={:.3f}\n", f.held_out, f.instance, f.selection.alpha,
               f.selection.threshold, f.report.f1);
  }
  fmt::print("{} F1: {}\n", o.variant, result.summary.text);
  return 0;
}

int cmd_synth(const Options& o) {
  const auto& s = o.synth;
  if (s.n < 2) throw UsageError("--n must be at least 2");
  require_unit(s.edge_prob, "--edge-prob");
  if (s.m <= 10) throw UsageError("--m must exceed 10");
  if (!(s.kb_precision > 0.0 && s.kb_precision <= 1.0)) throw UsageError("--kb-precision must be in (0,1]");
  if (!(s.kb_recall > 0.0 && s.kb_recall <= 1.0)) throw UsageError("--kb-recall must be in (0,1]");
  const auto manifests = pipeline::write_synthetic_instances(fs::path(o.out), s);
  for (const auto& m : manifests) fmt::print("{}\n", m.string());
  return 0;
}

int cmd_adjacency(const Options& o) {
  if (!o.alpha_adj) throw UsageError("adjacency-eval requires --alpha-adj");
  require_open_unit(*o.alpha_adj, "--alpha-adj");
  require_unit(o.textadj_threshold, "--textadj-threshold");
  const auto& manifest = single_manifest(o);
  const auto p = pipeline_options(o);
  const pipeline::PreparedInstance prepared(pipeline::load_instance(fs::path(manifest)), o.max_cond);
  const auto report = pipeline::adjacency_eval(prepared, *o.alpha_adj, o.textadj_threshold, p.binning);
  const auto dir = output_dir(o);
  write_json(dir / "adjacency.json",
             pipeline::adjacency_report(prepared.name(), *o.alpha_adj, o.textadj_threshold, report));
  fmt::print("TextAdj precision={:.3f} recall={:.3f}\n", report.textadj.precision, report.textadj.recall);
  fmt::print("StandardAdj precision={:.3f} recall={:.3f}\n", report.standard.precision, report.standard.recall);
  return 0;
}

void add_variant_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--variant", o.variant, "CausPSL, ObsPSL, CausPSL-PC or ObsPSL-PC")->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "significance level for binning tests")->capture_default_str();
  cmd->add_option("--alpha-adj", o.alpha_adj, "significance level for StandardAdj (ObsPSL variants)");
}

void add_common_flags(CLI::App* cmd, Options& o, bool many_manifests) {
  auto* m = cmd->add_option("--manifest", o.manifests, many_manifests ? "instance manifests (repeat)"
                                                                      : "instance manifest JSON");
  m->required();
  if (!many_manifests) m->expected(1);
  cmd->add_option("--max-cond", o.max_cond, "largest conditioning set")->capture_default_str();
  cmd->add_flag("--no-skew-rescale", o.no_skew_rescale, "use p instead of its cube root for independence truths");
  cmd->add_option("--out", o.out, "output directory")->capture_default_str();
}

void add_solver_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--rho", o.solver.rho, "ADMM step parameter")->capture_default_str();
  cmd->add_option("--max-iters", o.solver.max_iters, "ADMM iteration cap")->capture_default_str();
  cmd->add_option("--eps-abs", o.solver.eps_abs, "absolute residual tolerance")->capture_default_str();
  cmd->add_option("--eps-rel", o.solver.eps_rel, "relative residual tolerance")->capture_default_str();
  cmd->add_option("--init", o.solver.initial_value, "initial value of every target")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Causal discovery from independence tests and knowledge-base evidence"};
  app.require_subcommand(1);

  auto* tests = app.add_subcommand("tests", "run independence tests and bin them into atoms");
  add_common_flags(tests, o, false);
  tests->add_option("--alpha", o.alpha, "significance level for binning tests")->capture_default_str();

  auto* ground = app.add_subcommand("ground", "dump the ground program");
  add_common_flags(ground, o, false);
  add_variant_flags(ground, o);

  auto* run = app.add_subcommand("run", "infer, round and score one instance");
  add_common_flags(run, o, false);
  add_variant_flags(run, o);
  add_solver_flags(run, o);
  run->add_option("--threshold", o.threshold, "rounding threshold for Causes")->capture_default_str();
  run->add_option("--iteration-log", o.iteration_log, "write a per-iteration TSV here");

  auto* cv = app.add_subcommand("cv", "leave-one-instance-out cross-validation");
  add_common_flags(cv, o, true);
  cv->add_option("--variant", o.variant, "CausPSL, ObsPSL, CausPSL-PC or ObsPSL-PC")->capture_default_str();
  cv->add_option("--alphas", o.alphas, "alpha grid")->delimiter(',');
  cv->add_option("--alpha-adjs", o.alpha_adjs, "alpha_adj grid (ObsPSL variants)")->delimiter(',');
  cv->add_option("--thresholds", o.thresholds, "rounding threshold grid")->delimiter(',');
  add_solver_flags(cv, o);

  auto* synth = app.add_subcommand("synth", "write synthetic instances");
  synth->add_option("--n", o.synth.n, "vertices per instance")->capture_default_str();
  synth->add_option("--edge-prob", o.synth.edge_prob, "probability of each forward edge")->capture_default_str();
  synth->add_option("--m", o.synth.m, "samples per instance")->capture_default_str();
  synth->add_option("--kb-precision", o.synth.kb_precision, "KB precision")->capture_default_str();
  synth->add_option("--kb-recall", o.synth.kb_recall, "KB recall")->capture_default_str();
  synth->add_option("--count", o.synth.count, "number of instances")->capture_default_str();
  synth->add_option("--seed", o.synth.seed, "random seed")->capture_default_str();
  synth->add_option("--out", o.out, "output directory")->capture_default_str();

  auto* adjacency = app.add_subcommand("adjacency-eval", "score TextAdj and StandardAdj against the gold skeleton");
  add_common_flags(adjacency, o, false);
  adjacency->add_option("--alpha-adj", o.alpha_adj, "significance level for StandardAdj")->required();
  adjacency->add_option("--textadj-threshold", o.textadj_threshold, "TextAdj truth must exceed this")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*tests) return cmd_tests(o);
    if (*ground) return cmd_ground(o);
    if (*run) return cmd_run(o);
    if (*cv) return cmd_cv(o);
    if (*synth) return cmd_synth(o);
    if (*adjacency) return cmd_adjacency(o);
  } catch (const UsageError& e) {
    fmt::print(stderr, "usage error: {}\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 2;
}
