#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <boost/math/special_functions/atanh.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using causalkb::Vertex;
using causalkb::infer::HlMrfProblem;

double lukasiewicz_distance(std::span<const double> literal_values) {
  double total = 0.0;
  for (double v : literal_values) total += v;
  return std::max(0.0, 1.0 - total);
}

double hinge_objective(const HlMrfProblem& problem, std::span<const double> y) {
  double total = 0.0;
  for (const auto& p : problem.potentials) {
    double lin = p.constant;
    for (const auto& t : p.terms) lin += t.coeff * y[t.target];
    if (lin > 0.0) total += p.weight * lin;
  }
  return total;
}

double map_by_vertex_enumeration(const HlMrfProblem& problem) {
  const std::size_t n = problem.num_targets;
  struct Plane {
    Eigen::VectorXd normal;
    double rhs;
  };
  std::vector<Plane> planes;
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[i] = 1.0;
    planes.push_back({e, 0.0});
    planes.push_back({e, 1.0});
  }
  for (const auto& p : problem.potentials) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    for (const auto& t : p.terms) a[t.target] += t.coeff;
    if (a.squaredNorm() == 0.0) continue;
    planes.push_back({a, -p.constant});
  }

  double best = std::numeric_limits<double>::infinity();
  if (n == 0) return hinge_objective(problem, {});
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t depth, std::size_t start) {
    if (depth == n) {
      Eigen::MatrixXd m(n, n);
      Eigen::VectorXd rhs(n);
      for (std::size_t r = 0; r < n; ++r) {
        m.row(r) = planes[pick[r]].normal.transpose();
        rhs[r] = planes[pick[r]].rhs;
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
      if (lu.rank() < static_cast<Eigen::Index>(n)) return;
      Eigen::VectorXd y = lu.solve(rhs);
      for (std::size_t i = 0; i < n; ++i) {
        if (y[i] < -1e-9 || y[i] > 1.0 + 1e-9) return;
        y[i] = std::clamp(y[i], 0.0, 1.0);
      }
      best = std::min(best, hinge_objective(problem, std::span<const double>(y.data(), n)));
      return;
    }
    for (std::size_t i = start; i < planes.size(); ++i) {
      pick[depth] = i;
      choose(depth + 1, i + 1);
    }
  };
  choose(0, 0);
  return best;
}

namespace {

// Minimum over the grid lo[i] + k·step (k = 0..), clipped to [0,1].
double grid_search(const HlMrfProblem& problem, const std::vector<double>& lo, const std::vector<double>& hi,
                   double step, std::vector<double>& argmin) {
  const std::size_t n = problem.num_targets;
  std::vector<double> y(lo);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t)> sweep = [&](std::size_t d) {
    if (d == n) {
      const double v = hinge_objective(problem, y);
      if (v < best) {
        best = v;
        argmin = y;
      }
      return;
    }
    const auto steps = static_cast<long>(std::llround((hi[d] - lo[d]) / step));
    for (long k = 0; k <= steps; ++k) {
      y[d] = std::clamp(lo[d] + k * step, 0.0, 1.0);
      sweep(d + 1);
    }
  };
  sweep(0);
  return best;
}

}  // namespace

double map_by_refined_grid(const HlMrfProblem& problem, double coarse, double fine) {
  const std::size_t n = problem.num_targets;
  std::vector<double> argmin;
  double best = grid_search(problem, std::vector<double>(n, 0.0), std::vector<double>(n, 1.0), coarse, argmin);
  std::vector<double> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = std::max(0.0, argmin[i] - coarse);
    hi[i] = std::min(1.0, argmin[i] + coarse);
  }
  std::vector<double> refined;
  best = std::min(best, grid_search(problem, lo, hi, fine, refined));
  return best;
}

HlMrfProblem random_problem(std::mt19937_64& rng, std::size_t vars, std::size_t potentials) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  HlMrfProblem problem;
  problem.num_targets = vars;
  std::vector<std::uint32_t> ids(vars);
  for (std::uint32_t i = 0; i < vars; ++i) ids[i] = i;
  for (std::size_t p = 0; p < potentials; ++p) {
    causalkb::infer::HingePotential h;
    h.weight = 0.5 + 9.5 * unit(rng);
    std::shuffle(ids.begin(), ids.end(), rng);
    const std::size_t k = 1 + static_cast<std::size_t>(unit(rng) * std::min<std::size_t>(vars, 4));
    for (std::size_t i = 0; i < std::min(k, vars); ++i) {
      const double c = unit(rng) < 0.5 ? (unit(rng) < 0.5 ? -1.0 : 1.0) : -1.5 + 3.0 * unit(rng);
      h.terms.push_back({ids[i], c});
    }
    std::sort(h.terms.begin(), h.terms.end());
    h.constant = -1.0 + 2.0 * unit(rng);
    problem.potentials.push_back(std::move(h));
  }
  return problem;
}

FisherReference fisher_reference(double r, std::size_t m, std::size_t s) {
  using big = boost::multiprecision::cpp_bin_float_50;
  const big z = boost::math::atanh(big(r)) * boost::multiprecision::sqrt(big(static_cast<double>(m - s - 3)));
  const big p = boost::math::erfc(boost::multiprecision::abs(z) / boost::multiprecision::sqrt(big(2)));
  return {static_cast<double>(z), static_cast<double>(p)};
}

double residual_partial_correlation(const Eigen::MatrixXd& corr, unsigned a, unsigned b,
                                    std::span<const unsigned> cond) {
  const auto k = static_cast<Eigen::Index>(cond.size());
  if (k == 0) return corr(a, b);
  Eigen::MatrixXd rss(k, k);
  Eigen::VectorXd rsa(k), rsb(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) rss(i, j) = corr(cond[i], cond[j]);
    rsa[i] = corr(cond[i], a);
    rsb[i] = corr(cond[i], b);
  }
  const auto solver = rss.colPivHouseholderQr();
  const Eigen::VectorXd beta_a = solver.solve(rsa);
  const Eigen::VectorXd beta_b = solver.solve(rsb);
  const double cov = corr(a, b) - rsa.dot(beta_b);
  const double var_a = 1.0 - rsa.dot(beta_a);
  const double var_b = 1.0 - rsb.dot(beta_b);
  return cov / std::sqrt(var_a * var_b);
}

double residual_partial_correlation(const Eigen::MatrixXd& data, unsigned a, unsigned b,
                                    std::span<const unsigned> cond, bool /*from_data*/) {
  const Eigen::Index rows = data.rows();
  Eigen::MatrixXd x(rows, static_cast<Eigen::Index>(cond.size()) + 1);
  x.col(0).setOnes();
  for (std::size_t i = 0; i < cond.size(); ++i) x.col(static_cast<Eigen::Index>(i) + 1) = data.col(cond[i]);
  const auto qr = x.colPivHouseholderQr();
  const Eigen::VectorXd ra = data.col(a) - x * qr.solve(data.col(a));
  const Eigen::VectorXd rb = data.col(b) - x * qr.solve(data.col(b));
  return pearson({ra.data(), static_cast<std::size_t>(rows)}, {rb.data(), static_cast<std::size_t>(rows)});
}

Eigen::MatrixXd random_correlation_matrix(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd f(dim, dim + 2);
  for (Eigen::Index i = 0; i < f.rows(); ++i) {
    for (Eigen::Index j = 0; j < f.cols(); ++j) f(i, j) = normal(rng);
  }
  Eigen::MatrixXd cov = f * f.transpose() + 0.5 * Eigen::MatrixXd::Identity(dim, dim);
  const Eigen::VectorXd inv_sd = cov.diagonal().array().rsqrt();
  Eigen::MatrixXd corr = inv_sd.asDiagonal() * cov * inv_sd.asDiagonal();
  corr.diagonal().setOnes();
  return corr;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

bool d_separated_by_paths(const causalkb::synth::SynthDag& dag, Vertex a, Vertex b,
                          std::span<const Vertex> cond) {
  const std::size_t n = dag.n;
  std::vector<std::vector<bool>> arrow(n, std::vector<bool>(n, false));  // arrow[u][v]: u → v
  for (const auto& e : dag.edges) arrow[e.from][e.to] = true;
  std::vector<bool> in_cond(n, false);
  for (Vertex v : cond) in_cond[v] = true;

  // opens[v]: v or one of its descendants is conditioned on.
  std::vector<bool> opens(n, false);
  for (Vertex v = 0; v < n; ++v) {
    std::vector<bool> seen(n, false);
    std::vector<Vertex> stack{v};
    seen[v] = true;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      if (in_cond[u]) opens[v] = true;
      for (Vertex w = 0; w < n; ++w) {
        if (arrow[u][w] && !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
  }

  std::vector<Vertex> path{a};
  std::vector<bool> on_path(n, false);
  on_path[a] = true;
  auto path_active = [&]() {
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      const Vertex prev = path[i - 1], mid = path[i], next = path[i + 1];
      const bool collider = arrow[prev][mid] && arrow[next][mid];
      if (collider ? !opens[mid] : in_cond[mid]) return false;
    }
    return true;
  };
  std::function<bool(Vertex)> search = [&](Vertex u) -> bool {
    for (Vertex w = 0; w < n; ++w) {
      if (!(arrow[u][w] || arrow[w][u]) || on_path[w]) continue;
      path.push_back(w);
      on_path[w] = true;
      const bool found = w == b ? path_active() : search(w);
      on_path[w] = false;
      path.pop_back();
      if (found) return true;
    }
    return false;
  };
  return !search(a);
}

double simulated_random_f1(std::size_t gold, std::size_t candidates, std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double q = static_cast<double>(gold) / static_cast<double>(candidates);
  std::bernoulli_distribution predict(q);
  double total = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t tp = 0, fp = 0;
    for (std::size_t i = 0; i < candidates; ++i) {
      if (!predict(rng)) continue;
      (i < gold ? tp : fp) += 1;
    }
    const std::size_t fn = gold - tp;
    if (tp > 0) total += 2.0 * tp / static_cast<double>(2 * tp + fp + fn);
  }
  return total / static_cast<double>(trials);
}

}  // namespace oracle
