#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace causalkb {

using Vertex = std::uint32_t;

inline constexpr std::size_t kDefaultMaxCond = 2;

/// Ordered list of distinct, non-empty vertex names; ordinals are positions.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<std::string> names);

  /// Names "v0".."v{n-1}".
  static VertexSet numbered(std::size_t n, std::string_view prefix = "v");

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(Vertex v) const;
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<Vertex> find(std::string_view name) const;
  /// Throws InvalidArgument for unknown names.
  Vertex at(std::string_view name) const;

  bool operator==(const VertexSet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, Vertex, std::less<>> index_;
};

/// Conditioning set: strictly ascending vertex ordinals.
class CondSet {
 public:
  CondSet() = default;

  /// Sorts the members; throws InvalidArgument on duplicates.
  static CondSet of(std::vector<Vertex> members);

  std::span<const Vertex> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(Vertex v) const noexcept;

  bool operator==(const CondSet&) const = default;
  /// Lexicographic on members. Use `canonical_less` for size-then-lexicographic.
  auto operator<=>(const CondSet&) const = default;

 private:
  explicit CondSet(std::vector<Vertex> sorted) : members_(std::move(sorted)) {}
  std::vector<Vertex> members_;
};

/// Size first, then lexicographic: the iteration order of conditioning sets.
bool canonical_less(const CondSet& lhs, const CondSet& rhs) noexcept;

/// All subsets of {0..n-1} \ excluded with size in [min_size, max_size], in
/// canonical order.
std::vector<CondSet> enumerate_cond_sets(std::size_t n, std::span<const Vertex> excluded,
                                         std::size_t max_size, std::size_t min_size = 0);

enum class Predicate : std::uint8_t {
  Dep,
  Indep,
  CondDep,
  CondIndep,
  InSet,
  TextAdj,
  StandardAdj,
  LocalPPI,
  Causes,
  Anc,
};

inline constexpr std::size_t kNumPredicates = 10;

std::string_view to_string(Predicate p) noexcept;
std::optional<Predicate> parse_predicate(std::string_view name) noexcept;

/// Symmetric in the two vertex arguments (CondDep/CondIndep: in the first two).
bool is_symmetric(Predicate p) noexcept;
bool is_target(Predicate p) noexcept;
bool takes_cond_set(Predicate p) noexcept;

struct ObservedAtom {
  Predicate predicate;
  Vertex a;
  Vertex b;
  CondSet cond;
  double truth;

  bool operator==(const ObservedAtom&) const = default;
};

/// Validates and canonicalizes an atom. Symmetric predicates get ascending
/// arguments. Throws InvalidArgument for out-of-range or repeated vertices, a
/// conditioning set that touches an endpoint, or truth outside [0,1].
ObservedAtom canonical_atom(Predicate predicate, std::span<const Vertex> args, double truth,
                            std::size_t num_vertices, CondSet cond = {});
ObservedAtom canonical_atom(const ObservedAtom& atom, std::size_t num_vertices);

struct TargetAtom {
  Predicate predicate;  // Causes or Anc
  Vertex from;
  Vertex to;
  double value = 0.0;

  bool operator==(const TargetAtom&) const = default;
};

/// Dense indexing of the 2·n·(n−1) target atoms: all Causes(from,to) in
/// row-major order of (from, to), followed by all Anc(from,to).
class TargetLayout {
 public:
  explicit TargetLayout(std::size_t n);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t size() const noexcept { return 2 * n_ * (n_ - 1); }

  std::uint32_t index(Predicate predicate, Vertex from, Vertex to) const;
  TargetAtom atom(std::uint32_t index) const;

 private:
  std::size_t n_;
};

/// Throws InvalidArgument when fewer than two vertices are given.
std::vector<TargetAtom> enumerate_targets(const VertexSet& vertices);

struct Edge {
  Vertex from;
  Vertex to;

  auto operator<=>(const Edge&) const = default;
};

}  // namespace causalkb
