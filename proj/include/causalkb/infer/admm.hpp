#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "causalkb/core/model.hpp"
#include "causalkb/infer/hlmrf.hpp"

namespace causalkb::infer {

struct IterationRecord {
  std::size_t iteration;
  double objective;
  double primal_residual;
  double dual_residual;
};

struct SolverConfig {
  double rho = 1.0;
  std::size_t max_iters = 25000;
  double eps_abs = 1e-5;
  double eps_rel = 1e-3;
  double initial_value = 0.5;
  /// Called once per iteration, after the dual update.
  std::function<void(const IterationRecord&)> observer;

  void validate() const;
};

struct MapSolution {
  std::vector<double> y;  // every entry in [0,1]
  double objective = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  /// Targets that appear in no potential; they keep the initial value.
  std::vector<std::uint32_t> free_variables;
};

/// Consensus ADMM for min Σ w·max(0, l(y)) over y ∈ [0,1]^N.
///
/// Each potential owns a local copy of its variables. One iteration solves
/// every local hinge-plus-proximal subproblem in closed form, sets each
/// consensus variable to the box-clamped average of (copy + scaled dual) over
/// the potentials touching it, then advances the duals. Stops when both
/// residuals meet the usual absolute/relative tolerances. The returned point
/// is the consensus iterate with the lowest objective seen, starting from the
/// initial point.
///
/// Throws SolverError if the iteration produces non-finite values.
MapSolution solve_map(const HlMrfProblem& problem, const SolverConfig& config = {});

void write_iteration_log_header(std::ostream& out);
void write_iteration_log_row(std::ostream& out, const IterationRecord& record);

struct RoundedGraph {
  std::vector<Edge> causes;     // y(Causes(a,b)) ≥ threshold
  std::vector<Edge> ancestors;  // y(Anc(a,b)) ≥ threshold, reported separately
};

RoundedGraph round_solution(const MapSolution& solution, const TargetLayout& layout, double threshold);

}  // namespace causalkb::infer
