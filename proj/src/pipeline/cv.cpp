#include "causalkb/pipeline/cv.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <fmt/format.h>

#include "causalkb/core/error.hpp"

namespace causalkb::pipeline {

std::vector<double> default_alpha_grid() {
  // Written out so the report shows 0.0025 rather than pow()'s rounding.
  std::vector<double> grid{0.1,  0.01,   0.001,    1e-4,    1e-5,  // 0.1^k
                           0.05, 0.0025, 0.000125, 6.25e-6, 3.125e-7};
  std::sort(grid.begin(), grid.end(), std::greater<>());
  return grid;
}

std::vector<double> default_threshold_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 19; ++i) grid.push_back(i / 20.0);
  return grid;
}

void CvConfig::validate() const {
  auto check = [](const std::vector<double>& grid, const char* what, bool closed) {
    if (grid.empty()) throw InvalidArgument(fmt::format("{} grid is empty", what));
    for (const double v : grid) {
      const bool ok = closed ? (v >= 0.0 && v <= 1.0) : (v > 0.0 && v < 1.0);
      if (!ok) throw InvalidArgument(fmt::format("{} grid value {} is out of range", what, v));
    }
  };
  check(alphas, "alpha", false);
  if (rules::adjacency_predicate(variant) == Predicate::StandardAdj) check(alpha_adjs, "alpha_adj", false);
  check(thresholds, "threshold", true);
}

std::string_view to_string(CvPhase phase) noexcept {
  switch (phase) {
    case CvPhase::Solve: return "solve";
    case CvPhase::Select: return "select";
    case CvPhase::Evaluate: return "evaluate";
  }
  return "?";
}

CvSummary summarize(std::span<const double> values) {
  CvSummary s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (const double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (const double v : values) sq += (v - s.mean) * (v - s.mean);
    s.stdev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  s.text = fmt::format("{:.2f} ± {:.2f}", s.mean, s.stdev);
  return s;
}

namespace {

std::vector<double> descending_unique(std::vector<double> grid) {
  std::sort(grid.begin(), grid.end(), std::greater<>());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

struct Combo {
  double alpha;
  std::optional<double> alpha_adj;
};

}  // namespace

CvResult cross_validate(std::span<const PreparedInstance> instances, const CvConfig& config,
                        const PipelineOptions& options, const std::function<void(const CvEvent&)>& observer) {
  if (instances.size() < 2) throw InvalidArgument("cross-validation needs at least two instances");
  config.validate();
  auto notify = [&](std::size_t fold, CvPhase phase, std::size_t instance) {
    if (observer) observer(CvEvent{fold, phase, instance});
  };

  // Selection order: descending α, α_adj, threshold; a later candidate only
  // wins on a strictly larger mean, which leaves ties with the larger values.
  const bool needs_adj = rules::adjacency_predicate(config.variant) == Predicate::StandardAdj;
  std::vector<Combo> combos;
  for (const double a : descending_unique(config.alphas)) {
    if (needs_adj) {
      for (const double aa : descending_unique(config.alpha_adjs)) combos.push_back({a, aa});
    } else {
      combos.push_back({a, std::nullopt});
    }
  }
  const auto thresholds = descending_unique(config.thresholds);

  // reports[instance][combo][threshold]
  std::vector<std::vector<std::vector<EvalReport>>> reports(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    notify(std::numeric_limits<std::size_t>::max(), CvPhase::Solve, i);
    const auto& prepared = instances[i];
    reports[i].resize(combos.size());
    for (std::size_t c = 0; c < combos.size(); ++c) {
      const VariantParams params{config.variant, combos[c].alpha, combos[c].alpha_adj};
      const auto solution = solve_variant(prepared, params, options);
      for (const double t : thresholds) {
        reports[i][c].push_back(evaluate_at(solution, prepared.layout(), prepared.instance().gold, t));
      }
    }
  }

  CvResult result;
  std::vector<double> held_out_f1;
  for (std::size_t fold = 0; fold < instances.size(); ++fold) {
    std::vector<std::size_t> training;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      if (i == fold) continue;
      notify(fold, CvPhase::Select, i);
      training.push_back(i);
    }
    std::size_t best_c = 0;
    std::size_t best_t = 0;
    double best_mean = -1.0;
    for (std::size_t c = 0; c < combos.size(); ++c) {
      for (std::size_t t = 0; t < thresholds.size(); ++t) {
        double sum = 0.0;
        for (const std::size_t i : training) sum += reports[i][c][t].f1;
        const double mean = sum / static_cast<double>(training.size());
        if (mean > best_mean) {
          best_mean = mean;
          best_c = c;
          best_t = t;
        }
      }
    }
    notify(fold, CvPhase::Evaluate, fold);
    FoldResult fr;
    fr.held_out = fold;
    fr.instance = instances[fold].name();
    fr.selection = Selection{combos[best_c].alpha, combos[best_c].alpha_adj, thresholds[best_t], best_mean};
    fr.report = reports[fold][best_c][best_t];
    held_out_f1.push_back(fr.report.f1);
    result.folds.push_back(std::move(fr));
  }
  result.summary = summarize(held_out_f1);
  return result;
}

}  // namespace causalkb::pipeline
