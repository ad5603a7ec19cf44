#pragma once

#include <array>
#include <span>
#include <unordered_map>
#include <vector>

#include "causalkb/core/model.hpp"

namespace causalkb::rules {

/// Closed-world lookup of observed truth values: anything never added is 0.
class EvidenceStore {
 public:
  explicit EvidenceStore(std::size_t num_vertices);

  std::size_t num_vertices() const noexcept { return n_; }

  /// Canonicalizes the atom; a later atom with the same key replaces an
  /// earlier one. Target predicates are rejected.
  void add(const ObservedAtom& atom);
  void add(std::span<const ObservedAtom> atoms);

  double truth(Predicate predicate, Vertex a, Vertex b) const;
  double truth(Predicate predicate, Vertex a, Vertex b, const CondSet& cond) const;

 private:
  struct CondKey {
    Predicate predicate;
    Vertex a;
    Vertex b;
    CondSet cond;
    bool operator==(const CondKey&) const = default;
  };
  struct CondKeyHash {
    std::size_t operator()(const CondKey& k) const noexcept;
  };

  std::size_t n_;
  std::array<std::vector<double>, kNumPredicates> pairwise_;
  std::unordered_map<CondKey, double, CondKeyHash> conditional_;
};

}  // namespace causalkb::rules
