#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "causalkb/core/model.hpp"
#include "causalkb/infer/hlmrf.hpp"
#include "causalkb/rules/evidence_store.hpp"
#include "causalkb/rules/rules.hpp"

namespace causalkb::rules {

/// The non-empty conditioning sets that S may bind to: for each pair, the sets
/// of size 1..max_cond over the remaining vertices (the same family the
/// independence tests were run over).
class CondSetFamily {
 public:
  CondSetFamily(std::size_t num_vertices, std::size_t max_cond);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t max_cond() const noexcept { return max_cond_; }

  const std::vector<CondSet>& sets_for(Vertex a, Vertex b) const;
  /// Positions in sets_for(a, b) of the sets containing v.
  std::span<const std::uint32_t> sets_containing(Vertex a, Vertex b, Vertex v) const;

 private:
  std::size_t pair_slot(Vertex a, Vertex b) const;

  std::size_t n_;
  std::size_t max_cond_;
  std::vector<std::vector<CondSet>> sets_;                 // per unordered pair
  std::vector<std::vector<std::uint32_t>> containing_;     // per (pair, vertex)
};

/// One disjunct of a ground clause: an observed value or a target variable,
/// possibly negated (Lukasiewicz negation 1 − x).
struct Disjunct {
  bool is_target = false;
  std::uint32_t target = 0;
  double value = 0.0;
  bool negated = false;
};

/// Lukasiewicz distance to satisfaction of a ground disjunction,
/// max(0, 1 − Σ disjunct values), as a linear hinge. Repeated targets are
/// merged and zero coefficients dropped.
infer::HingePotential lukasiewicz_hinge(std::span<const Disjunct> disjuncts, double weight);

struct GroundPotential {
  std::uint32_t rule;              // index into the rule list
  std::array<Vertex, 3> binding;   // A, B, C (unused slots are 0)
  CondSet set;                     // S (empty if unused)
  infer::HingePotential hinge;
};

/// Grounds every template against the evidence. Potentials whose maximum over
/// the unit box is ≤ 0 are dropped. Output order: rule, then A, B, C
/// ascending, then S in canonical order.
std::vector<GroundPotential> ground(std::span<const RuleTemplate> rules, const EvidenceStore& evidence,
                                    const TargetLayout& layout, const CondSetFamily& family);

/// Candidate bindings per template before evaluation and pruning (InSet is
/// structural, so only bindings where it holds are counted).
std::vector<std::size_t> count_groundings(std::span<const RuleTemplate> rules, std::size_t num_vertices,
                                          const CondSetFamily& family);

infer::HlMrfProblem to_problem(std::span<const GroundPotential> potentials, const TargetLayout& layout);

/// TSV: rule, binding, weight, constant, terms ("index:coeff" joined by ';').
void write_ground_dump(std::ostream& out, std::span<const RuleTemplate> rules,
                       std::span<const GroundPotential> potentials, const VertexSet& vertices);

}  // namespace causalkb::rules
