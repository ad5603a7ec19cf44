#pragma once

// In-memory synthetic instances for pipeline and cross-validation tests.

#include <string>

#include "causalkb/pipeline/instance.hpp"
#include "causalkb/synth/synth.hpp"

namespace fixture {

struct InstanceShape {
  std::size_t n = 6;
  double edge_prob = 0.3;
  std::size_t m = 200;
  double kb_precision = 1.0;
  double kb_recall = 1.0;
};

/// DAG, data and KB all derived from `seed`. Retries the KB draw on the next
/// sub-seed if it keeps no true pair.
inline causalkb::pipeline::NetworkInstance make_instance(std::uint64_t seed, const InstanceShape& shape = {},
                                                         std::string name = {}) {
  using namespace causalkb;
  auto dag = synth::sample_dag(shape.n, shape.edge_prob, synth::mix_seed(seed, 0));
  for (std::uint64_t k = 1; dag.edges.empty(); ++k) {
    dag = synth::sample_dag(shape.n, shape.edge_prob, synth::mix_seed(seed, 100 + k));
  }
  pipeline::NetworkInstance inst{name.empty() ? "fixture" + std::to_string(seed) : std::move(name),
                                 synth::simulate_sem(dag, shape.m, synth::mix_seed(seed, 1)),
                                 std::nullopt,
                                 {},
                                 dag.edge_list()};
  for (std::uint64_t k = 2;; ++k) {
    try {
      inst.kb = synth::corrupt_kb(dag, shape.kb_precision, shape.kb_recall, synth::mix_seed(seed, k));
      break;
    } catch (const std::exception&) {
      if (k > 50) throw;
    }
  }
  return inst;
}

}  // namespace fixture
