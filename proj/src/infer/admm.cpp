#include "causalkb/infer/admm.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "causalkb/core/error.hpp"
#include "causalkb/io/text.hpp"
#include "causalkb/simd/kernels.hpp"

namespace causalkb::infer {

void SolverConfig::validate() const {
  if (!(rho > 0.0)) throw InvalidArgument(fmt::format("rho must be positive, got {}", rho));
  if (!(eps_abs > 0.0) || !(eps_rel > 0.0)) {
    throw InvalidArgument("solver tolerances must be positive");
  }
  if (!(initial_value >= 0.0 && initial_value <= 1.0)) {
    throw InvalidArgument(fmt::format("initial value {} outside [0,1]", initial_value));
  }
}

namespace {

// Contiguous run of local copies owned by one potential.
struct Block {
  std::uint32_t begin;
  std::uint32_t end;
  double weight;
  double constant;
  double coeff_sq;  // Σ a²
};

}  // namespace

MapSolution solve_map(const HlMrfProblem& problem, const SolverConfig& config) {
  problem.validate();
  config.validate();
  const auto& k = simd::active();
  const std::size_t n = problem.num_targets;

  // Compact the variables that some potential touches.
  std::vector<std::int64_t> active_of(n, -1);
  std::vector<std::uint32_t> active_vars;
  double constant_penalty = 0.0;
  std::vector<Block> blocks;
  std::vector<double> coeff;
  std::vector<std::uint32_t> var;
  for (const auto& p : problem.potentials) {
    if (p.terms.empty()) {
      constant_penalty += p.weight * std::max(0.0, p.constant);
      continue;
    }
    Block b{static_cast<std::uint32_t>(coeff.size()), 0, p.weight, p.constant, 0.0};
    for (const auto& t : p.terms) {
      if (active_of[t.target] < 0) {
        active_of[t.target] = static_cast<std::int64_t>(active_vars.size());
        active_vars.push_back(t.target);
      }
      coeff.push_back(t.coeff);
      var.push_back(static_cast<std::uint32_t>(active_of[t.target]));
      b.coeff_sq += t.coeff * t.coeff;
    }
    b.end = static_cast<std::uint32_t>(coeff.size());
    // An all-zero row is a constant penalty in disguise.
    if (b.coeff_sq == 0.0) {
      constant_penalty += p.weight * std::max(0.0, p.constant);
      coeff.resize(b.begin);
      var.resize(b.begin);
      continue;
    }
    blocks.push_back(b);
  }

  const std::size_t num_active = active_vars.size();
  const std::size_t num_copies = coeff.size();

  MapSolution sol;
  sol.y.assign(n, config.initial_value);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (active_of[i] < 0) sol.free_variables.push_back(i);
  }

  // Copies of each consensus variable, in copy order.
  std::vector<std::uint32_t> var_ptr(num_active + 1, 0);
  for (auto v : var) ++var_ptr[v + 1];
  for (std::size_t j = 0; j < num_active; ++j) var_ptr[j + 1] += var_ptr[j];
  std::vector<std::uint32_t> var_copies(num_copies);
  {
    std::vector<std::uint32_t> fill(var_ptr.begin(), var_ptr.end() - 1);
    for (std::uint32_t c = 0; c < num_copies; ++c) var_copies[fill[var[c]]++] = c;
  }
  std::vector<double> inv_count(num_active);
  for (std::size_t j = 0; j < num_active; ++j) {
    inv_count[j] = 1.0 / static_cast<double>(var_ptr[j + 1] - var_ptr[j]);
  }

  std::vector<double> z(num_active, config.initial_value);
  std::vector<double> zc(num_copies);
  std::vector<double> zc_old(num_copies);
  std::vector<double> x(num_copies);
  std::vector<double> u(num_copies, 0.0);
  k.gather(z.data(), var.data(), zc.data(), num_copies);
  std::copy(zc.begin(), zc.end(), x.begin());

  auto current_objective = [&]() {
    double total = constant_penalty;
    for (const auto& b : blocks) {
      double l = b.constant;
      for (std::uint32_t c = b.begin; c < b.end; ++c) l += coeff[c] * zc[c];
      if (l > 0.0) total += b.weight * l;
    }
    return total;
  };

  double best_objective = current_objective();
  std::vector<double> best_z = z;
  const double sqrt_p = std::sqrt(static_cast<double>(num_copies));
  const double inv_rho = 1.0 / config.rho;

  sol.converged = num_copies == 0;
  std::size_t it = 0;
  while (!sol.converged && it < config.max_iters) {
    ++it;

    // Local hinge subproblems: minimize w·max(0, c + a·x) + ρ/2·‖x − v‖², v = z − u.
    for (const auto& b : blocks) {
      double lin = b.constant;
      for (std::uint32_t c = b.begin; c < b.end; ++c) {
        x[c] = zc[c] - u[c];
        lin += coeff[c] * x[c];
      }
      if (lin <= 0.0) continue;  // hinge inactive at v
      const double step = b.weight * inv_rho;
      // Move along −a by w/ρ if that stays on the active side; otherwise stop
      // on the hinge.
      const double t = (lin - step * b.coeff_sq >= 0.0) ? step : lin / b.coeff_sq;
      for (std::uint32_t c = b.begin; c < b.end; ++c) x[c] -= t * coeff[c];
    }

    // Consensus: clamped average of x + u over each variable's copies.
    for (std::size_t j = 0; j < num_active; ++j) {
      double s = 0.0;
      for (std::uint32_t q = var_ptr[j]; q < var_ptr[j + 1]; ++q) {
        const auto c = var_copies[q];
        s += x[c] + u[c];
      }
      z[j] = s;
    }
    k.scale_clamp01(z.data(), inv_count.data(), num_active);

    zc_old.swap(zc);
    k.gather(z.data(), var.data(), zc.data(), num_copies);
    const double primal = std::sqrt(k.dual_step(u.data(), x.data(), zc.data(), num_copies));
    const double dual = config.rho * std::sqrt(k.sq_dist(zc.data(), zc_old.data(), num_copies));
    if (!std::isfinite(primal) || !std::isfinite(dual)) {
      throw SolverError(fmt::format("ADMM produced non-finite residuals at iteration {}", it));
    }

    const double obj = current_objective();
    if (!std::isfinite(obj)) {
      throw SolverError(fmt::format("ADMM produced a non-finite objective at iteration {}", it));
    }
    if (obj < best_objective) {
      best_objective = obj;
      best_z = z;
    }
    sol.primal_residual = primal;
    sol.dual_residual = dual;
    if (config.observer) config.observer(IterationRecord{it, obj, primal, dual});

    const double x_norm = std::sqrt(k.dot(x.data(), x.data(), num_copies));
    const double z_norm = std::sqrt(k.dot(zc.data(), zc.data(), num_copies));
    const double u_norm = std::sqrt(k.dot(u.data(), u.data(), num_copies));
    const double eps_primal = config.eps_abs * sqrt_p + config.eps_rel * std::max(x_norm, z_norm);
    const double eps_dual = config.eps_abs * sqrt_p + config.eps_rel * config.rho * u_norm;
    sol.converged = primal <= eps_primal && dual <= eps_dual;
  }

  for (std::size_t j = 0; j < num_active; ++j) sol.y[active_vars[j]] = best_z[j];
  sol.iterations = it;
  sol.objective = objective(problem, sol.y);
  return sol;
}

void write_iteration_log_header(std::ostream& out) {
  out << "iteration\tobjective\tprimal_residual\tdual_residual\n";
}

void write_iteration_log_row(std::ostream& out, const IterationRecord& r) {
  out << r.iteration << '\t' << io::format_double(r.objective) << '\t'
      << io::format_double(r.primal_residual) << '\t' << io::format_double(r.dual_residual) << '\n';
}

RoundedGraph round_solution(const MapSolution& solution, const TargetLayout& layout, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw InvalidArgument(fmt::format("rounding threshold {} outside [0,1]", threshold));
  }
  if (solution.y.size() != layout.size()) {
    throw InvalidArgument("round_solution: solution does not match the target layout");
  }
  RoundedGraph g;
  for (std::uint32_t i = 0; i < layout.size(); ++i) {
    if (solution.y[i] < threshold) continue;
    const auto atom = layout.atom(i);
    auto& bucket = atom.predicate == Predicate::Causes ? g.causes : g.ancestors;
    bucket.push_back(Edge{atom.from, atom.to});
  }
  return g;
}

}  // namespace causalkb::infer
