#include "causalkb/synth/synth.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <set>

#include <fmt/format.h>

#include "causalkb/core/error.hpp"

namespace causalkb::synth {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool SynthDag::has_edge(Vertex from, Vertex to) const {
  return std::any_of(edges.begin(), edges.end(),
                     [&](const WeightedEdge& e) { return e.from == from && e.to == to; });
}

std::vector<Vertex> SynthDag::parents(Vertex v) const {
  std::vector<Vertex> out;
  for (const auto& e : edges) {
    if (e.to == v) out.push_back(e.from);
  }
  return out;
}

std::vector<Edge> SynthDag::edge_list() const {
  std::vector<Edge> out;
  for (const auto& e : edges) out.push_back({e.from, e.to});
  return out;
}

std::vector<std::pair<Vertex, Vertex>> SynthDag::skeleton() const {
  std::set<std::pair<Vertex, Vertex>> pairs;
  for (const auto& e : edges) pairs.emplace(std::min(e.from, e.to), std::max(e.from, e.to));
  return {pairs.begin(), pairs.end()};
}

namespace {

// Kahn's algorithm, smallest ready vertex first. Empty result on a cycle.
std::vector<Vertex> topological_order(std::size_t n, const std::vector<WeightedEdge>& edges) {
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<Vertex>> children(n);
  for (const auto& e : edges) {
    ++indegree[e.to];
    children[e.from].push_back(e.to);
  }
  std::set<Vertex> ready;
  for (Vertex v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.insert(v);
  }
  std::vector<Vertex> order;
  while (!ready.empty()) {
    const Vertex v = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(v);
    for (Vertex c : children[v]) {
      if (--indegree[c] == 0) ready.insert(c);
    }
  }
  if (order.size() != n) order.clear();
  return order;
}

void assign_scales(SynthDag& dag) {
  const std::size_t n = dag.n;
  dag.noise_scales.assign(n, 1.0);
  dag.output_scales.assign(n, 1.0);
  std::vector<std::vector<WeightedEdge>> in_edges(n);
  for (const auto& e : dag.edges) in_edges[e.to].push_back(e);

  // Population covariance of the already generated (unit-variance) vertices.
  std::vector<double> cov(n * n, 0.0);
  std::vector<Vertex> done;
  for (Vertex v : dag.order) {
    std::vector<double> c(n, 0.0);  // Cov(signal_v, x_j)
    for (const auto& e : in_edges[v]) {
      for (Vertex j : done) c[j] += e.weight * cov[e.from * n + j];
    }
    double signal = 0.0;
    for (const auto& e : in_edges[v]) signal += e.weight * c[e.from];
    const double noise_var = in_edges[v].empty() ? 1.0 : std::max(1.0 - signal, kMinNoiseVariance);
    const double out = 1.0 / std::sqrt(signal + noise_var);
    dag.noise_scales[v] = std::sqrt(noise_var);
    dag.output_scales[v] = out;
    for (Vertex j : done) {
      cov[v * n + j] = c[j] * out;
      cov[j * n + v] = c[j] * out;
    }
    cov[v * n + v] = 1.0;
    done.push_back(v);
  }
}

}  // namespace

bool SynthDag::is_acyclic() const {
  return n == 0 || topological_order(n, edges).size() == n;
}

SynthDag make_dag(std::size_t n, std::vector<WeightedEdge> edges, std::uint64_t seed) {
  for (const auto& e : edges) {
    if (e.from >= n || e.to >= n || e.from == e.to) {
      throw InvalidArgument(fmt::format("invalid edge ({},{}) for n={}", e.from, e.to, n));
    }
  }
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& x, const WeightedEdge& y) {
    return std::tie(x.from, x.to) < std::tie(y.from, y.to);
  });
  SynthDag dag;
  dag.n = n;
  dag.seed = seed;
  dag.edges = std::move(edges);
  dag.order = topological_order(n, dag.edges);
  if (dag.order.size() != n) throw InvalidArgument("edge list contains a cycle");
  assign_scales(dag);
  return dag;
}

SynthDag sample_dag(std::size_t n, double edge_prob, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("sample_dag needs n >= 2");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
    throw InvalidArgument(fmt::format("edge_prob {} outside [0,1]", edge_prob));
  }
  std::mt19937_64 rng(seed);
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::shuffle(order.begin(), order.end(), rng);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> magnitude(kMinEdgeWeight, kMaxEdgeWeight);
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (unit(rng) >= edge_prob) continue;
      const double w = magnitude(rng);
      const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
      edges.push_back({order[i], order[j], sign * w});
    }
  }
  SynthDag dag = make_dag(n, std::move(edges), seed);
  // Keep the sampled order; make_dag's Kahn order is also valid but differs.
  dag.order = std::move(order);
  assign_scales(dag);
  return dag;
}

stats::Dataset simulate_sem(const SynthDag& dag, std::size_t m, std::uint64_t seed) {
  return simulate_sem(dag, m, seed, VertexSet::numbered(dag.n, "g"));
}

stats::Dataset simulate_sem(const SynthDag& dag, std::size_t m, std::uint64_t seed, VertexSet names) {
  if (m <= 10) throw InvalidArgument(fmt::format("simulate_sem needs m > 10, got {}", m));
  if (names.size() != dag.n) throw InvalidArgument("simulate_sem: name count does not match the DAG");
  const std::size_t n = dag.n;
  std::vector<std::vector<WeightedEdge>> in_edges(n);
  for (const auto& e : dag.edges) in_edges[e.to].push_back(e);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> values(n * m);  // column-major
  for (std::size_t r = 0; r < m; ++r) {
    for (Vertex v : dag.order) {
      double x = 0.0;
      for (const auto& e : in_edges[v]) x += e.weight * values[e.from * m + r];
      x += dag.noise_scales[v] * normal(rng);
      values[v * m + r] = x * dag.output_scales[v];
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    double* col = values.data() + v * m;
    double mean = 0.0;
    for (std::size_t r = 0; r < m; ++r) mean += col[r];
    mean /= static_cast<double>(m);
    double var = 0.0;
    for (std::size_t r = 0; r < m; ++r) var += (col[r] - mean) * (col[r] - mean);
    const double inv_sd = 1.0 / std::sqrt(var / static_cast<double>(m));
    for (std::size_t r = 0; r < m; ++r) col[r] = (col[r] - mean) * inv_sd;
  }
  return stats::Dataset(std::move(names), m, std::move(values));
}

bool d_separated(const SynthDag& dag, Vertex a, Vertex b, const CondSet& cond) {
  const std::size_t n = dag.n;
  if (a >= n || b >= n || a == b) throw InvalidArgument("d_separated: invalid vertex pair");
  if (cond.contains(a) || cond.contains(b)) {
    throw InvalidArgument("d_separated: conditioning set contains an endpoint");
  }
  std::vector<std::vector<Vertex>> parents(n);
  std::vector<std::vector<Vertex>> children(n);
  for (const auto& e : dag.edges) {
    parents[e.to].push_back(e.from);
    children[e.from].push_back(e.to);
  }

  // Vertices that are in cond or have a descendant in cond.
  std::vector<char> in_cond(n, 0);
  std::vector<char> opens_collider(n, 0);
  std::deque<Vertex> work;
  for (Vertex z : cond.members()) {
    in_cond[z] = 1;
    opens_collider[z] = 1;
    work.push_back(z);
  }
  while (!work.empty()) {
    const Vertex v = work.front();
    work.pop_front();
    for (Vertex p : parents[v]) {
      if (!opens_collider[p]) {
        opens_collider[p] = 1;
        work.push_back(p);
      }
    }
  }

  // Active-trail search over (vertex, direction). `up` = entered from a child.
  std::vector<char> seen_up(n, 0);
  std::vector<char> seen_down(n, 0);
  std::deque<std::pair<Vertex, bool>> queue{{a, true}};
  while (!queue.empty()) {
    const auto [v, up] = queue.front();
    queue.pop_front();
    auto& seen = up ? seen_up : seen_down;
    if (seen[v]) continue;
    seen[v] = 1;
    if (v == b) return false;
    if (up) {
      if (in_cond[v]) continue;
      for (Vertex p : parents[v]) queue.emplace_back(p, true);
      for (Vertex c : children[v]) queue.emplace_back(c, false);
    } else {
      if (!in_cond[v]) {
        for (Vertex c : children[v]) queue.emplace_back(c, false);
      }
      if (opens_collider[v]) {
        for (Vertex p : parents[v]) queue.emplace_back(p, true);
      }
    }
  }
  return true;
}

std::vector<ObservedAtom> oracle_atoms(const SynthDag& dag, std::size_t max_cond) {
  const std::size_t n = dag.n;
  std::vector<ObservedAtom> out;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      const std::array<Vertex, 2> ends{a, b};
      for (auto& cond : enumerate_cond_sets(n, ends, max_cond)) {
        const bool sep = d_separated(dag, a, b, cond);
        const bool marginal = cond.empty();
        const Predicate p = marginal ? (sep ? Predicate::Indep : Predicate::Dep)
                                     : (sep ? Predicate::CondIndep : Predicate::CondDep);
        out.push_back(ObservedAtom{p, a, b, std::move(cond), 1.0});
      }
    }
  }
  for (const auto& [a, b] : dag.skeleton()) {
    out.push_back(ObservedAtom{Predicate::TextAdj, a, b, {}, 1.0});
  }
  return out;
}

kb::KbEvidence corrupt_kb(const SynthDag& dag, double precision, double recall, std::uint64_t seed,
                          double scale_max) {
  if (!(precision > 0.0 && precision <= 1.0) || !(recall > 0.0 && recall <= 1.0)) {
    throw InvalidArgument("corrupt_kb: precision and recall must lie in (0,1]");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto affinity = [&] { return scale_max * (1.0 - 0.5 * unit(rng)); };  // (0.5, 1]·scale

  kb::KbEvidence kb;
  kb.scale_max = scale_max;
  const auto skeleton = dag.skeleton();
  std::size_t kept = 0;
  for (const auto& pair : skeleton) {
    if (unit(rng) < recall) {
      kb.affinities[pair] = affinity();
      ++kept;
    }
  }
  if (kept == 0) {
    throw InvalidArgument("corrupt_kb: no skeleton pair was kept, precision is undefined");
  }
  const auto false_count = static_cast<std::size_t>(
      std::llround(static_cast<double>(kept) * (1.0 - precision) / precision));

  std::vector<std::pair<Vertex, Vertex>> candidates;
  const std::set<std::pair<Vertex, Vertex>> true_pairs(skeleton.begin(), skeleton.end());
  for (Vertex a = 0; a < dag.n; ++a) {
    for (Vertex b = a + 1; b < dag.n; ++b) {
      if (!true_pairs.count({a, b})) candidates.emplace_back(a, b);
    }
  }
  if (false_count > candidates.size()) {
    throw InvalidArgument("corrupt_kb: not enough non-adjacent pairs for the requested precision");
  }
  // Partial Fisher–Yates.
  for (std::size_t i = 0; i < false_count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, candidates.size() - 1);
    std::swap(candidates[i], candidates[pick(rng)]);
    kb.affinities[candidates[i]] = affinity();
  }
  return kb;
}

}  // namespace causalkb::synth
