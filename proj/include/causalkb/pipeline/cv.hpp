#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "causalkb/pipeline/evaluate.hpp"
#include "causalkb/pipeline/runner.hpp"

namespace causalkb::pipeline {

/// {0.1^k} ∪ {0.05^k} for k = 1..5, descending.
std::vector<double> default_alpha_grid();
/// 0.05, 0.10, …, 0.95.
std::vector<double> default_threshold_grid();

struct CvConfig {
  rules::Variant variant = rules::Variant::CausPSL;
  std::vector<double> alphas = default_alpha_grid();
  std::vector<double> alpha_adjs = default_alpha_grid();  // ObsPSL family only
  std::vector<double> thresholds = default_threshold_grid();

  void validate() const;
};

enum class CvPhase { Solve, Select, Evaluate };

std::string_view to_string(CvPhase phase) noexcept;

/// Which instance's results were consulted, and for what. Solve events happen
/// before any fold and carry fold = npos.
struct CvEvent {
  std::size_t fold;
  CvPhase phase;
  std::size_t instance;
};

struct Selection {
  double alpha = 0.0;
  std::optional<double> alpha_adj;
  double threshold = 0.0;
  double mean_f1 = 0.0;  // over the instances other than the held-out one
};

struct FoldResult {
  std::size_t held_out = 0;
  std::string instance;
  Selection selection;
  EvalReport report;
};

struct CvSummary {
  double mean = 0.0;
  double stdev = 0.0;  // sample standard deviation; 0 for a single fold
  std::string text;    // "0.xx ± 0.yy"
};

CvSummary summarize(std::span<const double> values);

struct CvResult {
  std::vector<FoldResult> folds;
  CvSummary summary;
};

/// Leave-one-instance-out selection of (α[, α_adj], threshold). Each instance
/// is solved once per parameter combination up front; a fold then picks the
/// combination with the best mean F1 over the other instances and reports the
/// held-out instance under it. Ties go to larger α, then larger α_adj, then
/// larger threshold.
CvResult cross_validate(std::span<const PreparedInstance> instances, const CvConfig& config,
                        const PipelineOptions& options = {},
                        const std::function<void(const CvEvent&)>& observer = {});

}  // namespace causalkb::pipeline
