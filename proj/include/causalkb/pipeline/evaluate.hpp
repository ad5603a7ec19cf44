#pragma once

#include <span>

#include "causalkb/core/model.hpp"

namespace causalkb::pipeline {

struct EvalReport {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  double precision = 0.0;  // 0 when nothing was predicted
  double recall = 0.0;     // 0 when gold is empty
  double f1 = 0.0;         // 0 when precision + recall = 0

  bool operator==(const EvalReport&) const = default;
};

EvalReport make_report(std::size_t tp, std::size_t fp, std::size_t fn);

/// Directed-edge retrieval. Duplicates are ignored.
EvalReport score_directed(std::span<const Edge> predicted, std::span<const Edge> gold);

/// Undirected retrieval: both inputs are projected to unordered pairs.
EvalReport score_undirected(std::span<const Edge> predicted, std::span<const Edge> gold);

/// Expected F1 of predicting each of `candidates` ordered pairs independently
/// with probability gold_size / candidates.
double expected_random_f1(std::size_t gold_size, std::size_t candidates);

}  // namespace causalkb::pipeline
