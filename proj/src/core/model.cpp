#include "causalkb/core/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "causalkb/core/error.hpp"

namespace causalkb {

VertexSet::VertexSet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) {
      throw InvalidArgument(fmt::format("vertex {} has an empty name", i));
    }
    auto [it, inserted] = index_.emplace(names_[i], static_cast<Vertex>(i));
    if (!inserted) {
      throw InvalidArgument(fmt::format("duplicate vertex name '{}'", names_[i]));
    }
  }
}

VertexSet VertexSet::numbered(std::size_t n, std::string_view prefix) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(fmt::format("{}{}", prefix, i));
  }
  return VertexSet(std::move(names));
}

const std::string& VertexSet::name(Vertex v) const {
  if (v >= names_.size()) {
    throw InvalidArgument(fmt::format("vertex ordinal {} out of range (n={})", v, names_.size()));
  }
  return names_[v];
}

std::optional<Vertex> VertexSet::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vertex VertexSet::at(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw InvalidArgument(fmt::format("unknown vertex '{}'", name));
}

CondSet CondSet::of(std::vector<Vertex> members) {
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
    throw InvalidArgument("conditioning set contains a repeated vertex");
  }
  return CondSet(std::move(members));
}

bool CondSet::contains(Vertex v) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), v);
}

bool canonical_less(const CondSet& lhs, const CondSet& rhs) noexcept {
  if (lhs.size() != rhs.size()) return lhs.size() < rhs.size();
  return lhs < rhs;
}

std::vector<CondSet> enumerate_cond_sets(std::size_t n, std::span<const Vertex> excluded,
                                         std::size_t max_size, std::size_t min_size) {
  std::vector<Vertex> pool;
  for (Vertex v = 0; v < n; ++v) {
    if (std::find(excluded.begin(), excluded.end(), v) == excluded.end()) pool.push_back(v);
  }
  std::vector<CondSet> out;
  max_size = std::min(max_size, pool.size());
  for (std::size_t k = min_size; k <= max_size; ++k) {
    // Lexicographic k-combinations of pool positions.
    std::vector<std::size_t> pos(k);
    for (std::size_t i = 0; i < k; ++i) pos[i] = i;
    while (true) {
      std::vector<Vertex> members(k);
      for (std::size_t i = 0; i < k; ++i) members[i] = pool[pos[i]];
      out.push_back(CondSet::of(std::move(members)));
      std::size_t i = k;
      while (i > 0 && pos[i - 1] == pool.size() - k + i - 1) --i;
      if (i == 0) break;
      ++pos[i - 1];
      for (std::size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
    }
  }
  return out;
}

namespace {

constexpr std::array<std::string_view, kNumPredicates> kPredicateNames = {
    "Dep",     "Indep",       "CondDep",  "CondIndep", "InSet",
    "TextAdj", "StandardAdj", "LocalPPI", "Causes",    "Anc",
};

}  // namespace

std::string_view to_string(Predicate p) noexcept {
  return kPredicateNames[static_cast<std::size_t>(p)];
}

std::optional<Predicate> parse_predicate(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kPredicateNames.size(); ++i) {
    if (kPredicateNames[i] == name) return static_cast<Predicate>(i);
  }
  return std::nullopt;
}

bool is_symmetric(Predicate p) noexcept {
  switch (p) {
    case Predicate::Dep:
    case Predicate::Indep:
    case Predicate::CondDep:
    case Predicate::CondIndep:
    case Predicate::TextAdj:
    case Predicate::StandardAdj:
    case Predicate::LocalPPI:
      return true;
    default:
      return false;
  }
}

bool is_target(Predicate p) noexcept { return p == Predicate::Causes || p == Predicate::Anc; }

bool takes_cond_set(Predicate p) noexcept {
  return p == Predicate::CondDep || p == Predicate::CondIndep;
}

ObservedAtom canonical_atom(Predicate predicate, std::span<const Vertex> args, double truth,
                            std::size_t num_vertices, CondSet cond) {
  if (predicate == Predicate::InSet) {
    throw InvalidArgument("InSet is evaluated structurally and is never stored as an atom");
  }
  if (args.size() != 2) {
    throw InvalidArgument(fmt::format("{} takes two vertex arguments, got {}",
                                      to_string(predicate), args.size()));
  }
  if (!(truth >= 0.0 && truth <= 1.0)) {
    throw InvalidArgument(fmt::format("truth value {} outside [0,1]", truth));
  }
  Vertex a = args[0];
  Vertex b = args[1];
  if (a >= num_vertices || b >= num_vertices) {
    throw InvalidArgument(fmt::format("vertex ordinal out of range in {}({},{}) (n={})",
                                      to_string(predicate), a, b, num_vertices));
  }
  if (a == b) {
    throw InvalidArgument(fmt::format("{}({},{}) repeats a vertex", to_string(predicate), a, b));
  }
  if (!takes_cond_set(predicate) && !cond.empty()) {
    throw InvalidArgument(fmt::format("{} does not take a conditioning set", to_string(predicate)));
  }
  for (Vertex s : cond.members()) {
    if (s >= num_vertices) {
      throw InvalidArgument(fmt::format("conditioning vertex {} out of range", s));
    }
  }
  if (cond.contains(a) || cond.contains(b)) {
    throw InvalidArgument("conditioning set contains an endpoint");
  }
  if (is_symmetric(predicate) && b < a) std::swap(a, b);
  return ObservedAtom{predicate, a, b, std::move(cond), truth};
}

ObservedAtom canonical_atom(const ObservedAtom& atom, std::size_t num_vertices) {
  const std::array<Vertex, 2> args{atom.a, atom.b};
  return canonical_atom(atom.predicate, args, atom.truth, num_vertices, atom.cond);
}

TargetLayout::TargetLayout(std::size_t n) : n_(n) {
  if (n < 2) throw InvalidArgument(fmt::format("need at least two vertices, got {}", n));
}

std::uint32_t TargetLayout::index(Predicate predicate, Vertex from, Vertex to) const {
  if (!is_target(predicate)) {
    throw InvalidArgument(fmt::format("{} is not a target predicate", to_string(predicate)));
  }
  if (from >= n_ || to >= n_ || from == to) {
    throw InvalidArgument(fmt::format("invalid target pair ({},{})", from, to));
  }
  const std::size_t per_pred = n_ * (n_ - 1);
  const std::size_t offset = predicate == Predicate::Anc ? per_pred : 0;
  const std::size_t col = to < from ? to : to - 1;
  return static_cast<std::uint32_t>(offset + from * (n_ - 1) + col);
}

TargetAtom TargetLayout::atom(std::uint32_t index) const {
  const std::size_t per_pred = n_ * (n_ - 1);
  if (index >= 2 * per_pred) throw InvalidArgument(fmt::format("target index {} out of range", index));
  const Predicate pred = index < per_pred ? Predicate::Causes : Predicate::Anc;
  const std::size_t local = index % per_pred;
  const auto from = static_cast<Vertex>(local / (n_ - 1));
  auto to = static_cast<Vertex>(local % (n_ - 1));
  if (to >= from) ++to;
  return TargetAtom{pred, from, to, 0.0};
}

std::vector<TargetAtom> enumerate_targets(const VertexSet& vertices) {
  const TargetLayout layout(vertices.size());
  std::vector<TargetAtom> out;
  out.reserve(layout.size());
  for (std::uint32_t i = 0; i < layout.size(); ++i) out.push_back(layout.atom(i));
  return out;
}

}  // namespace causalkb
