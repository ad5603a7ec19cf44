#include "causalkb/rules/evidence_store.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "causalkb/core/error.hpp"

namespace causalkb::rules {

EvidenceStore::EvidenceStore(std::size_t num_vertices) : n_(num_vertices) {
  for (std::size_t p = 0; p < kNumPredicates; ++p) {
    const auto pred = static_cast<Predicate>(p);
    if (!is_target(pred) && !takes_cond_set(pred) && pred != Predicate::InSet) {
      pairwise_[p].assign(n_ * n_, 0.0);
    }
  }
}

std::size_t EvidenceStore::CondKeyHash::operator()(const CondKey& k) const noexcept {
  std::size_t h = static_cast<std::size_t>(k.predicate);
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(k.a);
  mix(k.b);
  for (Vertex v : k.cond.members()) mix(v);
  return h;
}

void EvidenceStore::add(const ObservedAtom& atom) {
  if (is_target(atom.predicate)) {
    throw InvalidArgument(fmt::format("{} is a target predicate, not evidence", to_string(atom.predicate)));
  }
  const ObservedAtom c = canonical_atom(atom, n_);
  if (takes_cond_set(c.predicate)) {
    conditional_[CondKey{c.predicate, c.a, c.b, c.cond}] = c.truth;
    return;
  }
  auto& table = pairwise_[static_cast<std::size_t>(c.predicate)];
  table[c.a * n_ + c.b] = c.truth;
  if (is_symmetric(c.predicate)) table[c.b * n_ + c.a] = c.truth;
}

void EvidenceStore::add(std::span<const ObservedAtom> atoms) {
  for (const auto& a : atoms) add(a);
}

double EvidenceStore::truth(Predicate predicate, Vertex a, Vertex b) const {
  const auto& table = pairwise_[static_cast<std::size_t>(predicate)];
  if (table.empty()) {
    throw InvalidArgument(fmt::format("{} is not a pairwise observed predicate", to_string(predicate)));
  }
  if (a >= n_ || b >= n_) throw InvalidArgument("EvidenceStore::truth: vertex out of range");
  return table[a * n_ + b];
}

double EvidenceStore::truth(Predicate predicate, Vertex a, Vertex b, const CondSet& cond) const {
  if (!takes_cond_set(predicate)) return truth(predicate, a, b);
  if (b < a) std::swap(a, b);
  const auto it = conditional_.find(CondKey{predicate, a, b, cond});
  return it == conditional_.end() ? 0.0 : it->second;
}

}  // namespace causalkb::rules
