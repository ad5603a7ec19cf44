#include "causalkb/pipeline/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "causalkb/core/error.hpp"

namespace causalkb::pipeline {

EvalReport make_report(std::size_t tp, std::size_t fp, std::size_t fn) {
  EvalReport r{tp, fp, fn, 0.0, 0.0, 0.0};
  if (tp + fp > 0) r.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  if (tp + fn > 0) r.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  if (r.precision + r.recall > 0.0) r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

namespace {

EvalReport score_sets(const std::set<Edge>& predicted, const std::set<Edge>& gold) {
  std::size_t tp = 0;
  for (const auto& e : predicted) tp += gold.count(e);
  return make_report(tp, predicted.size() - tp, gold.size() - tp);
}

std::set<Edge> undirected(std::span<const Edge> edges) {
  std::set<Edge> out;
  for (const auto& e : edges) out.insert(Edge{std::min(e.from, e.to), std::max(e.from, e.to)});
  return out;
}

}  // namespace

EvalReport score_directed(std::span<const Edge> predicted, std::span<const Edge> gold) {
  return score_sets({predicted.begin(), predicted.end()}, {gold.begin(), gold.end()});
}

EvalReport score_undirected(std::span<const Edge> predicted, std::span<const Edge> gold) {
  return score_sets(undirected(predicted), undirected(gold));
}

double expected_random_f1(std::size_t gold_size, std::size_t candidates) {
  if (gold_size > candidates) throw InvalidArgument("expected_random_f1: more gold edges than candidates");
  if (gold_size == 0 || candidates == 0) return 0.0;
  const double q = static_cast<double>(gold_size) / static_cast<double>(candidates);
  auto binomial_pmf = [q](std::size_t trials) {
    std::vector<double> pmf(trials + 1);
    for (std::size_t k = 0; k <= trials; ++k) {
      const double log_choose = std::lgamma(trials + 1.0) - std::lgamma(k + 1.0) - std::lgamma(trials - k + 1.0);
      const double log_p = log_choose + (k ? k * std::log(q) : 0.0) +
                           (trials - k ? (trials - k) * std::log1p(-q) : 0.0);
      pmf[k] = q >= 1.0 ? (k == trials ? 1.0 : 0.0) : std::exp(log_p);
    }
    return pmf;
  };
  const auto tp_pmf = binomial_pmf(gold_size);
  const auto fp_pmf = binomial_pmf(candidates - gold_size);
  double expected = 0.0;
  for (std::size_t tp = 1; tp <= gold_size; ++tp) {
    for (std::size_t fp = 0; fp < fp_pmf.size(); ++fp) {
      // F1 = 2TP / (2TP + FP + FN) = 2TP / (gold + TP + FP)
      const double f1 = 2.0 * tp / static_cast<double>(gold_size + tp + fp);
      expected += tp_pmf[tp] * fp_pmf[fp] * f1;
    }
  }
  return expected;
}

}  // namespace causalkb::pipeline
