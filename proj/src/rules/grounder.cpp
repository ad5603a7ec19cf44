#include "causalkb/rules/grounder.hpp"

#include <algorithm>
#include <ostream>

#include <fmt/format.h>

#include "causalkb/core/error.hpp"
#include "causalkb/io/text.hpp"

namespace causalkb::rules {

CondSetFamily::CondSetFamily(std::size_t num_vertices, std::size_t max_cond)
    : n_(num_vertices), max_cond_(max_cond) {
  sets_.resize(n_ * n_);
  containing_.resize(n_ * n_ * n_);
  for (Vertex a = 0; a < n_; ++a) {
    for (Vertex b = a + 1; b < n_; ++b) {
      const std::array<Vertex, 2> ends{a, b};
      auto& sets = sets_[a * n_ + b];
      sets = enumerate_cond_sets(n_, ends, max_cond_, 1);
      for (std::uint32_t i = 0; i < sets.size(); ++i) {
        for (Vertex v : sets[i].members()) containing_[(a * n_ + b) * n_ + v].push_back(i);
      }
    }
  }
}

std::size_t CondSetFamily::pair_slot(Vertex a, Vertex b) const {
  if (a >= n_ || b >= n_ || a == b) throw InvalidArgument("CondSetFamily: invalid pair");
  return std::min(a, b) * n_ + std::max(a, b);
}

const std::vector<CondSet>& CondSetFamily::sets_for(Vertex a, Vertex b) const {
  return sets_[pair_slot(a, b)];
}

std::span<const std::uint32_t> CondSetFamily::sets_containing(Vertex a, Vertex b, Vertex v) const {
  if (v >= n_) throw InvalidArgument("CondSetFamily: vertex out of range");
  return containing_[pair_slot(a, b) * n_ + v];
}

infer::HingePotential lukasiewicz_hinge(std::span<const Disjunct> disjuncts, double weight) {
  infer::HingePotential h;
  h.weight = weight;
  h.constant = 1.0;
  for (const auto& d : disjuncts) {
    if (d.is_target) {
      // y contributes −y; ¬y = 1 − y contributes −1 + y.
      if (d.negated) {
        h.constant -= 1.0;
        h.terms.push_back({d.target, 1.0});
      } else {
        h.terms.push_back({d.target, -1.0});
      }
    } else {
      h.constant -= d.negated ? 1.0 - d.value : d.value;
    }
  }
  std::sort(h.terms.begin(), h.terms.end());
  std::vector<infer::Term> merged;
  for (const auto& t : h.terms) {
    if (!merged.empty() && merged.back().target == t.target) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const infer::Term& t) { return t.coeff == 0.0; });
  h.terms = std::move(merged);
  return h;
}

namespace {

struct RuleShape {
  bool uses_c = false;
  bool uses_s = false;
  // Vertex variables of the first CondDep/CondIndep literal.
  Var set_first = Var::A;
  Var set_second = Var::B;
  // Vertex variable tested by InSet, if any.
  std::optional<Var> inset_var;
};

RuleShape analyse(const RuleTemplate& rule) {
  rule.validate();
  RuleShape shape;
  shape.uses_c = rule.uses(Var::C);
  bool found_set_pair = false;
  auto scan = [&](const Literal& l) {
    if (takes_cond_set(l.predicate) && !found_set_pair) {
      shape.uses_s = true;
      shape.set_first = l.first;
      shape.set_second = l.second;
      found_set_pair = true;
    }
    if (l.predicate == Predicate::InSet && !shape.inset_var) shape.inset_var = l.first;
  };
  for (const auto& l : rule.body) scan(l);
  for (const auto& l : rule.head) scan(l);
  return shape;
}

inline Vertex bound(const std::array<Vertex, 3>& binding, Var v) {
  return binding[static_cast<std::size_t>(v)];
}

// Calls fn(binding, set-or-null) for every candidate binding of the rule.
template <class Fn>
void for_each_binding(const RuleTemplate& rule, const RuleShape& shape, std::size_t n,
                      const CondSetFamily& family, Fn&& fn) {
  auto with_sets = [&](const std::array<Vertex, 3>& binding) {
    if (!shape.uses_s) {
      fn(binding, static_cast<const CondSet*>(nullptr));
      return;
    }
    const Vertex x = bound(binding, shape.set_first);
    const Vertex y = bound(binding, shape.set_second);
    const auto& sets = family.sets_for(x, y);
    if (shape.inset_var) {
      const Vertex member = bound(binding, *shape.inset_var);
      if (member == x || member == y) return;
      for (auto i : family.sets_containing(x, y, member)) fn(binding, &sets[i]);
    } else {
      for (const auto& s : sets) fn(binding, &s);
    }
  };

  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = 0; b < n; ++b) {
      if (b == a || (rule.unordered_pair && b < a)) continue;
      if (!shape.uses_c) {
        with_sets({a, b, 0});
        continue;
      }
      for (Vertex c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        with_sets({a, b, c});
      }
    }
  }
}

}  // namespace

std::vector<GroundPotential> ground(std::span<const RuleTemplate> rules, const EvidenceStore& evidence,
                                    const TargetLayout& layout, const CondSetFamily& family) {
  const std::size_t n = layout.num_vertices();
  if (evidence.num_vertices() != n || family.num_vertices() != n) {
    throw InvalidArgument("ground: evidence, layout and conditioning family disagree on vertex count");
  }
  std::vector<GroundPotential> out;
  std::vector<Disjunct> disjuncts;
  static const CondSet kNoSet;

  for (std::uint32_t r = 0; r < rules.size(); ++r) {
    const auto& rule = rules[r];
    const RuleShape shape = analyse(rule);

    for_each_binding(rule, shape, n, family, [&](const std::array<Vertex, 3>& binding, const CondSet* set) {
      const CondSet& s = set ? *set : kNoSet;
      disjuncts.clear();
      bool satisfied = false;
      auto add_literal = [&](const Literal& l, bool in_body) {
        // Body literal L appears in the clause as ¬L, head literal as itself.
        const bool negated = in_body != l.negated;
        const Vertex u = bound(binding, l.first);
        if (l.predicate == Predicate::InSet) {
          const double member = s.contains(u) ? 1.0 : 0.0;
          const double value = negated ? 1.0 - member : member;
          if (value >= 1.0) satisfied = true;
          disjuncts.push_back({false, 0, member, negated});
          return;
        }
        const Vertex v = bound(binding, l.second);
        if (is_target(l.predicate)) {
          disjuncts.push_back({true, layout.index(l.predicate, u, v), 0.0, negated});
        } else {
          disjuncts.push_back({false, 0, evidence.truth(l.predicate, u, v, s), negated});
        }
      };
      for (const auto& l : rule.body) add_literal(l, true);
      for (const auto& l : rule.head) add_literal(l, false);
      if (satisfied) return;

      auto hinge = lukasiewicz_hinge(disjuncts, rule.weight);
      if (hinge.upper_bound() <= 0.0) return;
      out.push_back(GroundPotential{r, binding, s, std::move(hinge)});
    });
  }
  return out;
}

std::vector<std::size_t> count_groundings(std::span<const RuleTemplate> rules, std::size_t num_vertices,
                                          const CondSetFamily& family) {
  std::vector<std::size_t> counts;
  for (const auto& rule : rules) {
    const RuleShape shape = analyse(rule);
    std::size_t count = 0;
    for_each_binding(rule, shape, num_vertices, family,
                     [&](const std::array<Vertex, 3>&, const CondSet*) { ++count; });
    counts.push_back(count);
  }
  return counts;
}

infer::HlMrfProblem to_problem(std::span<const GroundPotential> potentials, const TargetLayout& layout) {
  infer::HlMrfProblem problem;
  problem.num_targets = layout.size();
  problem.potentials.reserve(potentials.size());
  for (const auto& g : potentials) problem.potentials.push_back(g.hinge);
  return problem;
}

void write_ground_dump(std::ostream& out, std::span<const RuleTemplate> rules,
                       std::span<const GroundPotential> potentials, const VertexSet& vertices) {
  out << "rule\tbinding\tweight\tconstant\tterms\n";
  for (const auto& g : potentials) {
    const auto& rule = rules[g.rule];
    std::string binding;
    for (Var v : {Var::A, Var::B, Var::C}) {
      if (!rule.uses(v)) continue;
      if (!binding.empty()) binding += ',';
      binding += fmt::format("{}={}", to_string(v), vertices.name(g.binding[static_cast<std::size_t>(v)]));
    }
    if (rule.uses(Var::S)) {
      binding += ",S={";
      for (std::size_t i = 0; i < g.set.size(); ++i) {
        if (i) binding += '|';
        binding += vertices.name(g.set.members()[i]);
      }
      binding += '}';
    }
    std::string terms;
    for (const auto& t : g.hinge.terms) {
      if (!terms.empty()) terms += ';';
      terms += fmt::format("{}:{}", t.target, io::format_double(t.coeff));
    }
    out << rule.id << '\t' << binding << '\t' << io::format_double(g.hinge.weight) << '\t'
        << io::format_double(g.hinge.constant) << '\t' << terms << '\n';
  }
}

}  // namespace causalkb::rules
