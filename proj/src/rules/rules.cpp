#include "causalkb/rules/rules.hpp"

#include <fmt/format.h>

#include "causalkb/core/error.hpp"

namespace causalkb::rules {

std::string_view to_string(Var v) noexcept {
  switch (v) {
    case Var::A: return "A";
    case Var::B: return "B";
    case Var::C: return "C";
    case Var::S: return "S";
  }
  return "?";
}

bool RuleTemplate::uses(Var v) const noexcept {
  auto scan = [v](const std::vector<Literal>& lits) {
    for (const auto& l : lits) {
      if (l.first == v || l.second == v) return true;
      if (v == Var::S && takes_cond_set(l.predicate)) return true;
    }
    return false;
  };
  return scan(body) || scan(head);
}

void RuleTemplate::validate() const {
  if (!(weight > 0.0)) throw InvalidArgument(fmt::format("rule {}: weight must be positive", id));
  if (body.empty() && head.empty()) throw InvalidArgument(fmt::format("rule {} is empty", id));
  bool has_cond = false;
  bool has_inset = false;
  auto check = [&](const Literal& l) {
    if (l.predicate == Predicate::InSet) {
      if (l.negated) throw InvalidArgument(fmt::format("rule {}: InSet cannot be negated", id));
      if (l.first == Var::S || l.second != Var::S) {
        throw InvalidArgument(fmt::format("rule {}: InSet takes a vertex variable and S", id));
      }
      has_inset = true;
      return;
    }
    if (l.first == Var::S || l.second == Var::S) {
      throw InvalidArgument(fmt::format("rule {}: S used as a vertex argument of {}", id,
                                        causalkb::to_string(l.predicate)));
    }
    if (l.first == l.second) {
      throw InvalidArgument(fmt::format("rule {}: {} repeats a variable", id,
                                        causalkb::to_string(l.predicate)));
    }
    has_cond = has_cond || takes_cond_set(l.predicate);
  };
  for (const auto& l : body) check(l);
  for (const auto& l : head) check(l);
  if (has_inset && !has_cond) {
    throw InvalidArgument(fmt::format("rule {}: InSet needs a CondDep/CondIndep literal to bind S", id));
  }
  if (unordered_pair && uses(Var::C)) {
    throw InvalidArgument(fmt::format("rule {}: unordered_pair rules cannot use C", id));
  }
}

std::string_view to_string(Variant v) noexcept {
  switch (v) {
    case Variant::CausPSL: return "CausPSL";
    case Variant::ObsPSL: return "ObsPSL";
    case Variant::CausPSLPC: return "CausPSL-PC";
    case Variant::ObsPSLPC: return "ObsPSL-PC";
  }
  return "?";
}

std::optional<Variant> parse_variant(std::string_view name) noexcept {
  for (auto v : {Variant::CausPSL, Variant::ObsPSL, Variant::CausPSLPC, Variant::ObsPSLPC}) {
    if (to_string(v) == name) return v;
  }
  return std::nullopt;
}

Predicate adjacency_predicate(Variant v) noexcept {
  return (v == Variant::CausPSL || v == Variant::CausPSLPC) ? Predicate::TextAdj
                                                             : Predicate::StandardAdj;
}

bool has_joint_rules(Variant v) noexcept {
  return v == Variant::CausPSL || v == Variant::ObsPSL;
}

std::vector<RuleTemplate> builtin_rules(Variant variant, bool with_ppi, const RuleWeights& weights) {
  using enum Var;
  constexpr auto Causes = Predicate::Causes;
  constexpr auto Anc = Predicate::Anc;
  constexpr auto Dep = Predicate::Dep;
  constexpr auto CondDep = Predicate::CondDep;
  constexpr auto CondIndep = Predicate::CondIndep;
  constexpr auto InSet = Predicate::InSet;
  const Predicate Adj = adjacency_predicate(variant);
  const double w = weights.base;

  std::vector<RuleTemplate> rules;
  // PC-inspired orientation rules.
  rules.push_back({"C1", w, {neg(Adj, A, B)}, {neg(Causes, A, B)}});
  rules.push_back({"C2", weights.acyclic, {lit(Causes, A, B)}, {neg(Causes, B, A)}, true});
  const std::vector<Literal> vstructure{lit(Adj, A, B), lit(Adj, C, B), neg(Adj, A, C),
                                        lit(CondDep, A, C), lit(InSet, B, S)};
  rules.push_back({"C3", w, vstructure, {lit(Causes, A, B)}});
  rules.push_back({"C4", w, vstructure, {lit(Causes, C, B)}});
  rules.push_back({"C5", w,
                   {lit(Causes, A, B), lit(Dep, A, C), lit(CondIndep, A, C), lit(InSet, B, S),
                    lit(Adj, B, C)},
                   {lit(Causes, B, C)}});
  rules.push_back({"C6", w, {lit(Causes, A, B), lit(Causes, B, C), lit(Adj, A, C)}, {lit(Causes, A, C)}});
  if (!has_joint_rules(variant)) return rules;

  // Joint ancestral/causal rules.
  rules.push_back({"J1", w, {lit(Causes, A, B)}, {lit(Anc, A, B)}});
  rules.push_back({"J2", w, {neg(Anc, A, B)}, {neg(Causes, A, B)}});
  rules.push_back({"J3", w, {lit(Anc, A, B), lit(Anc, B, C)}, {lit(Anc, A, C)}});
  rules.push_back({"J4", w, {lit(Anc, A, B), lit(Adj, A, B)}, {lit(Causes, A, B)}});
  rules.push_back({"J5", w,
                   {lit(Adj, A, B), lit(Adj, B, C), lit(Dep, A, C), lit(CondIndep, A, C),
                    lit(InSet, B, S), lit(Causes, B, A), neg(Anc, C, A)},
                   {lit(Causes, B, C)}});
  if (with_ppi) {
    rules.push_back({"PPI", weights.ppi, {lit(Anc, A, B), lit(Predicate::LocalPPI, A, B)},
                     {lit(Causes, A, B)}});
  }
  return rules;
}

}  // namespace causalkb::rules
