#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "causalkb/core/model.hpp"

namespace causalkb::kb {

inline constexpr double kDefaultScaleMax = 1000.0;

/// Raw knowledge-base affinity scores keyed by ascending vertex pair. Pairs not
/// in the map have affinity 0.
struct KbEvidence {
  std::map<std::pair<Vertex, Vertex>, double> affinities;
  double scale_max = kDefaultScaleMax;
  std::size_t skipped_rows = 0;  // rows naming an unknown vertex or a self-pair
};

/// `scale_max` = nullopt divides by the largest score in the file.
/// Duplicate (in either orientation) rows keep the maximum score.
KbEvidence load_affinities(const std::filesystem::path& path, const VertexSet& vertices,
                           std::optional<double> scale_max = kDefaultScaleMax);

/// TextAdj(a,b) = min(1, raw / scale_max) for every pair with raw > 0.
std::vector<ObservedAtom> to_textadj(const KbEvidence& kb);

struct PpiEvidence {
  std::vector<ObservedAtom> atoms;  // LocalPPI, truth 1, ascending pairs
  std::size_t skipped_rows = 0;
};

PpiEvidence load_ppi(const std::filesystem::path& path, const VertexSet& vertices);

void write_affinities_tsv(std::ostream& out, const KbEvidence& kb, const VertexSet& vertices);

}  // namespace causalkb::kb
