#pragma once

#include <cstdint>
#include <vector>

#include "causalkb/core/model.hpp"
#include "causalkb/kb/evidence.hpp"
#include "causalkb/stats/dataset.hpp"

namespace causalkb::synth {

inline constexpr double kMinEdgeWeight = 0.4;
inline constexpr double kMaxEdgeWeight = 0.9;
/// Lower bound on a non-root vertex's noise variance in the unit-variance SEM.
inline constexpr double kMinNoiseVariance = 0.1;

struct WeightedEdge {
  Vertex from;
  Vertex to;
  double weight;
};

/// Random DAG over vertices 0..n−1 together with a linear-Gaussian SEM.
/// Edges point forward in `order` and are sorted by (from, to).
///
/// Each vertex is generated as (Σ weight·parent + noise)·output_scale, with
/// the noise variance chosen so that the population variance is 1 (roots get
/// unit noise; other vertices 1 − Var(signal), floored at kMinNoiseVariance,
/// then rescaled). A single standardized parent with weight w therefore has
/// correlation w with its child.
struct SynthDag {
  std::size_t n = 0;
  std::vector<Vertex> order;
  std::vector<WeightedEdge> edges;
  std::vector<double> noise_scales;
  std::vector<double> output_scales;
  std::uint64_t seed = 0;

  bool has_edge(Vertex from, Vertex to) const;
  std::vector<Vertex> parents(Vertex v) const;
  std::vector<Edge> edge_list() const;
  /// Unordered skeleton pairs, ascending.
  std::vector<std::pair<Vertex, Vertex>> skeleton() const;
  bool is_acyclic() const;
};

/// Builds a DAG with the given edges (weights) and unit-variance SEM scales.
/// Throws InvalidArgument if the edges contain a cycle or a self-loop.
SynthDag make_dag(std::size_t n, std::vector<WeightedEdge> edges, std::uint64_t seed = 0);

SynthDag sample_dag(std::size_t n, double edge_prob, std::uint64_t seed);

/// m rows from the SEM, columns standardized to mean 0 and unit variance.
stats::Dataset simulate_sem(const SynthDag& dag, std::size_t m, std::uint64_t seed);
stats::Dataset simulate_sem(const SynthDag& dag, std::size_t m, std::uint64_t seed, VertexSet names);

bool d_separated(const SynthDag& dag, Vertex a, Vertex b, const CondSet& cond);

/// Noise-free evidence: Dep/Indep/CondDep/CondIndep (truth 1) from
/// d-separation for every pair and conditioning set, plus TextAdj = 1 on the
/// skeleton.
std::vector<ObservedAtom> oracle_atoms(const SynthDag& dag, std::size_t max_cond);

/// Keeps each skeleton pair with probability `recall`, then adds
/// round(kept·(1 − precision)/precision) uniformly drawn non-skeleton pairs.
/// Affinities are uniform in (0.5, 1] times scale_max. Throws InvalidArgument
/// if no skeleton pair was kept or there are too few non-skeleton pairs.
kb::KbEvidence corrupt_kb(const SynthDag& dag, double precision, double recall, std::uint64_t seed,
                          double scale_max = kb::kDefaultScaleMax);

/// SplitMix64 step, used to derive independent sub-seeds from one seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace causalkb::synth
