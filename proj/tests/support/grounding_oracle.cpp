#include "grounding_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include <fmt/format.h>

#include "causalkb/core/model.hpp"
#include "causalkb/rules/evidence_store.hpp"
#include "causalkb/rules/grounder.hpp"
#include "causalkb/rules/rules.hpp"
#include "oracles.hpp"

namespace oracle {

using namespace causalkb;
using rules::Literal;
using rules::Var;

namespace {

constexpr std::size_t kVertices = 4;
constexpr std::size_t kMaxCond = 2;

using Key = std::tuple<Predicate, Vertex, Vertex, std::vector<Vertex>>;

struct Table {
  std::map<Key, double> values;

  double lookup(Predicate p, Vertex u, Vertex v, const std::vector<Vertex>& s) const {
    if (is_symmetric(p) && u > v) std::swap(u, v);
    const auto it = values.find(Key{p, u, v, takes_cond_set(p) ? s : std::vector<Vertex>{}});
    return it == values.end() ? 0.0 : it->second;
  }
};

// Target index from the documented layout: Causes block, then Anc block,
// row-major over (from, to) with the diagonal skipped.
std::uint32_t target_index(Predicate p, Vertex from, Vertex to) {
  const std::size_t n = kVertices;
  const std::size_t block = p == Predicate::Anc ? n * (n - 1) : 0;
  return static_cast<std::uint32_t>(block + from * (n - 1) + (to < from ? to : to - 1));
}

double draw_truth(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  if (u < 0.2) return 0.0;
  if (u < 0.4) return 1.0;
  return unit(rng);
}

Table random_evidence(std::mt19937_64& rng, rules::EvidenceStore& store) {
  Table t;
  const Predicate pairwise[] = {Predicate::Dep, Predicate::Indep, Predicate::TextAdj, Predicate::StandardAdj,
                                Predicate::LocalPPI};
  for (Vertex a = 0; a < kVertices; ++a) {
    for (Vertex b = a + 1; b < kVertices; ++b) {
      for (Predicate p : pairwise) {
        const double v = draw_truth(rng);
        t.values[Key{p, a, b, {}}] = v;
        store.add(ObservedAtom{p, a, b, {}, v});
      }
      const std::vector<Vertex> excluded{a, b};
      for (const auto& s : enumerate_cond_sets(kVertices, excluded, kMaxCond, 1)) {
        const std::vector<Vertex> members(s.members().begin(), s.members().end());
        for (Predicate p : {Predicate::CondDep, Predicate::CondIndep}) {
          const double v = draw_truth(rng);
          t.values[Key{p, a, b, members}] = v;
          store.add(ObservedAtom{p, a, b, s, v});
        }
      }
    }
  }
  return t;
}

rules::RuleTemplate random_rule(std::mt19937_64& rng, std::size_t index) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(unit(rng) * n) % n; };
  const Predicate pool[] = {Predicate::Dep,        Predicate::Indep,   Predicate::TextAdj, Predicate::StandardAdj,
                            Predicate::LocalPPI,   Predicate::Causes,  Predicate::Anc,     Predicate::Causes,
                            Predicate::Anc,        Predicate::CondDep, Predicate::CondIndep};
  const bool three_vars = unit(rng) < 0.5;
  const std::vector<std::pair<Var, Var>> pairs_two{{Var::A, Var::B}, {Var::B, Var::A}};
  const std::vector<std::pair<Var, Var>> pairs_three{{Var::A, Var::B}, {Var::B, Var::A}, {Var::A, Var::C},
                                                     {Var::C, Var::A}, {Var::B, Var::C}, {Var::C, Var::B}};
  const auto& pairs = three_vars ? pairs_three : pairs_two;

  rules::RuleTemplate rule;
  rule.id = fmt::format("R{}", index);
  rule.weight = 0.5 + 9.5 * unit(rng);
  const std::size_t k = 1 + pick(4);
  bool has_cond = false;
  std::optional<std::pair<Var, Var>> cond_pair;
  for (std::size_t i = 0; i < k; ++i) {
    Predicate p = pool[pick(std::size(pool))];
    if (takes_cond_set(p) && has_cond) p = Predicate::Dep;
    const auto vars = i == 0 ? pairs[pick(2)] : pairs[pick(pairs.size())];
    if (takes_cond_set(p)) {
      has_cond = true;
      cond_pair = vars;
    }
    Literal l{p, vars.first, vars.second, unit(rng) < 0.5};
    (unit(rng) < 0.5 ? rule.body : rule.head).push_back(l);
  }
  if (three_vars && std::none_of(rule.body.begin(), rule.body.end(), [](const Literal& l) {
        return l.first == Var::C || l.second == Var::C;
      }) && std::none_of(rule.head.begin(), rule.head.end(), [](const Literal& l) {
        return l.first == Var::C || l.second == Var::C;
      })) {
    rule.body.push_back(Literal{Predicate::TextAdj, Var::B, Var::C, unit(rng) < 0.5});
  }
  // A structural membership test on the vertex outside the tested pair.
  if (cond_pair && three_vars && unit(rng) < 0.6) {
    Var member = Var::A;
    for (Var v : {Var::A, Var::B, Var::C}) {
      if (v != cond_pair->first && v != cond_pair->second) member = v;
    }
    rule.body.push_back(Literal{Predicate::InSet, member, Var::S, false});
  }
  rule.validate();
  return rule;
}

struct Candidate {
  std::array<Vertex, 3> binding;
  std::vector<Vertex> set;
};

std::vector<Candidate> enumerate_bindings(const rules::RuleTemplate& rule) {
  bool uses_c = false;
  std::optional<std::pair<Var, Var>> cond_pair;
  std::optional<Var> member;
  for (const auto* side : {&rule.body, &rule.head}) {
    for (const auto& l : *side) {
      if (l.predicate == Predicate::InSet) {
        member = l.first;
        uses_c = uses_c || l.first == Var::C;
        continue;
      }
      uses_c = uses_c || l.first == Var::C || l.second == Var::C;
      if (takes_cond_set(l.predicate) && !cond_pair) cond_pair = {l.first, l.second};
    }
  }
  std::vector<Candidate> out;
  for (Vertex a = 0; a < kVertices; ++a) {
    for (Vertex b = 0; b < kVertices; ++b) {
      if (a == b) continue;
      for (Vertex c = 0; c < (uses_c ? kVertices : 1); ++c) {
        if (uses_c && (c == a || c == b)) continue;
        const std::array<Vertex, 3> binding{a, b, uses_c ? c : 0};
        if (!cond_pair) {
          out.push_back({binding, {}});
          continue;
        }
        const Vertex x = binding[static_cast<std::size_t>(cond_pair->first)];
        const Vertex y = binding[static_cast<std::size_t>(cond_pair->second)];
        // Every subset of size 1..2 of the other vertices, by size then lexicographic.
        std::vector<std::vector<Vertex>> sets;
        for (Vertex u = 0; u < kVertices; ++u) {
          if (u != x && u != y) sets.push_back({u});
        }
        for (Vertex u = 0; u < kVertices; ++u) {
          for (Vertex w = u + 1; w < kVertices; ++w) {
            if (u != x && u != y && w != x && w != y) sets.push_back({u, w});
          }
        }
        for (const auto& s : sets) {
          if (member) {
            const Vertex m = binding[static_cast<std::size_t>(*member)];
            if (std::find(s.begin(), s.end(), m) == s.end()) continue;
          }
          out.push_back({binding, s});
        }
      }
    }
  }
  return out;
}

// Clause value of every literal (body literals negated), plus the target
// indices involved.
struct Clause {
  std::vector<double> observed;
  std::vector<std::pair<std::uint32_t, bool>> targets;  // (index, appears negated)

  double distance(const std::vector<double>& y) const {
    std::vector<double> values = observed;
    for (const auto& [idx, negated] : targets) values.push_back(negated ? 1.0 - y[idx] : y[idx]);
    return lukasiewicz_distance(values);
  }
};

Clause clause_for(const rules::RuleTemplate& rule, const Candidate& c, const Table& table) {
  Clause clause;
  auto add = [&](const Literal& l, bool in_body) {
    const bool negated = in_body ? !l.negated : l.negated;
    const Vertex u = c.binding[static_cast<std::size_t>(l.first)];
    if (l.predicate == Predicate::InSet) {
      const bool in = std::find(c.set.begin(), c.set.end(), u) != c.set.end();
      clause.observed.push_back(negated ? (in ? 0.0 : 1.0) : (in ? 1.0 : 0.0));
      return;
    }
    const Vertex v = c.binding[static_cast<std::size_t>(l.second)];
    if (is_target(l.predicate)) {
      clause.targets.push_back({target_index(l.predicate, u, v), negated});
    } else {
      const double value = table.lookup(l.predicate, u, v, c.set);
      clause.observed.push_back(negated ? 1.0 - value : value);
    }
  };
  for (const auto& l : rule.body) add(l, true);
  for (const auto& l : rule.head) add(l, false);
  return clause;
}

std::vector<std::uint32_t> distinct_targets(const Clause& clause) {
  std::vector<std::uint32_t> ids;
  for (const auto& t : clause.targets) ids.push_back(t.first);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

// Convex piecewise-linear, so the maximum over the box is at a corner.
double max_over_box(const Clause& clause, std::vector<double> y) {
  const auto ids = distinct_targets(clause);
  double best = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << ids.size()); ++mask) {
    for (std::size_t i = 0; i < ids.size(); ++i) y[ids[i]] = (mask >> i) & 1 ? 1.0 : 0.0;
    best = std::max(best, clause.distance(y));
  }
  return best;
}

}  // namespace

GroundingCheck check_random_rules(std::uint64_t seed, std::size_t count, std::size_t points_per_rule,
                                  double grid_step) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const TargetLayout layout(kVertices);
  const rules::CondSetFamily family(kVertices, kMaxCond);
  GroundingCheck check;
  auto fail = [&](std::string what) {
    if (check.failures++ == 0) check.first_failure = std::move(what);
  };

  for (std::size_t r = 0; r < count; ++r) {
    rules::EvidenceStore store(kVertices);
    const Table table = random_evidence(rng, store);
    const std::vector<rules::RuleTemplate> rule_list{random_rule(rng, r)};
    const auto& rule = rule_list.front();
    ++check.rules;

    const auto potentials = rules::ground(rule_list, store, layout, family);
    std::map<std::pair<std::array<Vertex, 3>, std::vector<Vertex>>, const rules::GroundPotential*> emitted;
    for (const auto& g : potentials) {
      const std::vector<Vertex> set(g.set.members().begin(), g.set.members().end());
      if (!emitted.emplace(std::pair{g.binding, set}, &g).second) fail(fmt::format("{}: duplicate binding", rule.id));
    }
    check.kept += potentials.size();

    std::vector<std::vector<double>> points;
    for (std::size_t i = 0; i < points_per_rule; ++i) {
      std::vector<double> y(layout.size());
      for (auto& v : y) v = draw_truth(rng);
      points.push_back(std::move(y));
    }

    std::size_t matched = 0;
    for (const auto& cand : enumerate_bindings(rule)) {
      ++check.bindings;
      const Clause clause = clause_for(rule, cand, table);
      const auto it = emitted.find({cand.binding, cand.set});
      if (it == emitted.end()) {
        ++check.pruned;
        const double top = max_over_box(clause, std::vector<double>(layout.size(), 0.0));
        if (top > 1e-12) fail(fmt::format("{}: binding dropped although its maximum is {}", rule.id, top));
        if (grid_step > 0.0) {
          const auto ids = distinct_targets(clause);
          const auto steps = static_cast<std::size_t>(std::llround(1.0 / grid_step));
          std::vector<double> y(layout.size(), 0.0);
          std::function<void(std::size_t)> sweep = [&](std::size_t d) {
            if (d == ids.size()) {
              ++check.grid_points;
              if (clause.distance(y) > 1e-12) fail(fmt::format("{}: pruned binding violated on grid", rule.id));
              return;
            }
            for (std::size_t k = 0; k <= steps; ++k) {
              y[ids[d]] = std::min(1.0, k * grid_step);
              sweep(d + 1);
            }
          };
          sweep(0);
        }
        continue;
      }
      ++matched;
      const auto& hinge = it->second->hinge;
      if (hinge.weight != rule.weight) fail(fmt::format("{}: weight mismatch", rule.id));
      for (const auto& y : points) {
        const double err = std::abs(hinge.distance(y) - clause.distance(y));
        check.max_error = std::max(check.max_error, err);
        if (err > 1e-12) fail(fmt::format("{}: distance differs by {}", rule.id, err));
      }
    }
    if (matched != potentials.size()) fail(fmt::format("{}: grounder emitted a binding the oracle lacks", rule.id));
  }
  return check;
}

CornerCheck check_boolean_corners(std::uint64_t seed, std::size_t clauses_per_size) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  CornerCheck check;
  for (std::size_t k = 1; k <= 4; ++k) {
    for (std::size_t c = 0; c < clauses_per_size; ++c) {
      ++check.clauses;
      std::vector<bool> is_target(k), negated(k);
      for (std::size_t i = 0; i < k; ++i) {
        is_target[i] = coin(rng);
        negated[i] = coin(rng);
      }
      for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        ++check.assignments;
        std::vector<rules::Disjunct> disjuncts;
        std::vector<double> y(k, 0.0);
        bool satisfied = false;
        for (std::size_t i = 0; i < k; ++i) {
          const bool atom = (mask >> i) & 1;
          satisfied = satisfied || (atom != negated[i]);
          if (is_target[i]) {
            y[i] = atom ? 1.0 : 0.0;
            disjuncts.push_back({true, static_cast<std::uint32_t>(i), 0.0, negated[i]});
          } else {
            disjuncts.push_back({false, 0, atom ? 1.0 : 0.0, negated[i]});
          }
        }
        const auto hinge = rules::lukasiewicz_hinge(disjuncts, 1.0);
        const double d = hinge.distance(y);
        if (d != (satisfied ? 0.0 : 1.0)) ++check.failures;
      }
    }
  }
  return check;
}

}  // namespace oracle
