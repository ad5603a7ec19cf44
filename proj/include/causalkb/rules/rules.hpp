#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causalkb/core/model.hpp"

namespace causalkb::rules {

/// Logical variables of the rule language. A, B, C bind to distinct vertices;
/// S binds to a conditioning set.
enum class Var : std::uint8_t { A, B, C, S };

std::string_view to_string(Var v) noexcept;

/// One literal of a rule. For two-vertex predicates `first`/`second` are the
/// vertex variables; CondDep/CondIndep additionally bind the set variable S
/// implicitly. InSet(first, S) is a structural membership test with
/// `second == Var::S`.
struct Literal {
  Predicate predicate;
  Var first;
  Var second;
  bool negated = false;
};

inline Literal lit(Predicate p, Var first, Var second) { return {p, first, second, false}; }
inline Literal neg(Predicate p, Var first, Var second) { return {p, first, second, true}; }

/// Weighted clause body → head, where the head is a disjunction. Grounds to the
/// Lukasiewicz distance of (¬body₁ ∨ … ∨ head₁ ∨ …).
struct RuleTemplate {
  std::string id;
  double weight = 1.0;
  std::vector<Literal> body;
  std::vector<Literal> head;
  /// Ground once per unordered {A,B}: the clause maps to itself under A↔B.
  bool unordered_pair = false;

  bool uses(Var v) const noexcept;
  /// Throws InvalidArgument for malformed templates.
  void validate() const;
};

enum class Variant { CausPSL, ObsPSL, CausPSLPC, ObsPSLPC };

std::string_view to_string(Variant v) noexcept;
std::optional<Variant> parse_variant(std::string_view name) noexcept;

/// TextAdj for the CausPSL family, StandardAdj for ObsPSL.
Predicate adjacency_predicate(Variant v) noexcept;
bool has_joint_rules(Variant v) noexcept;

struct RuleWeights {
  double base = 5.0;
  double acyclic = 10.0;  // C2
  double ppi = 5.0;
};

/// C1–C6, then J1–J5 and the PPI rule (when `with_ppi`) for the non-PC variants.
std::vector<RuleTemplate> builtin_rules(Variant variant, bool with_ppi = false,
                                        const RuleWeights& weights = {});

}  // namespace causalkb::rules
