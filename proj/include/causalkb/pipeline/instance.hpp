#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "causalkb/core/model.hpp"
#include "causalkb/kb/evidence.hpp"
#include "causalkb/stats/dataset.hpp"

namespace causalkb::pipeline {

/// Instance manifest (JSON). Paths are relative to the manifest's directory.
///
///   {"name": "net01", "data": "data.csv", "affinity": "affinity.tsv",
///    "ppi": "ppi.tsv", "gold": "gold.tsv", "affinity_scale": 1000}
///
/// "affinity", "ppi" and "affinity_scale" are optional; "affinity_scale" may
/// be a positive number or the string "file-max".
struct InstanceManifest {
  std::string name;
  std::filesystem::path data;
  std::optional<std::filesystem::path> affinity;
  std::optional<std::filesystem::path> ppi;
  std::filesystem::path gold;
  std::optional<double> affinity_scale = kb::kDefaultScaleMax;  // nullopt = file-max
};

InstanceManifest load_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const InstanceManifest& manifest);

struct NetworkInstance {
  std::string name;
  stats::Dataset data;
  std::optional<kb::KbEvidence> kb;
  std::vector<ObservedAtom> ppi;
  std::vector<Edge> gold;  // sorted, unique, no self-loops

  const VertexSet& vertices() const noexcept { return data.vertices(); }
};

NetworkInstance load_instance(const InstanceManifest& manifest);
NetworkInstance load_instance(const std::filesystem::path& manifest_path);

/// Directed "from to" edges. Unknown vertices and self-loops are format errors.
std::vector<Edge> read_gold(const std::filesystem::path& path, const VertexSet& vertices);
void write_gold(std::ostream& out, std::span<const Edge> edges, const VertexSet& vertices);

struct SynthSpec {
  std::size_t n = 20;
  double edge_prob = 0.1;
  std::size_t m = 210;
  double kb_precision = 0.32;
  double kb_recall = 0.11;
  std::size_t count = 10;
  std::uint64_t seed = 0;
};

/// Writes `count` instance directories (inst00, inst01, …) under `out_dir`,
/// each with data.csv, affinity.tsv, gold.tsv and manifest.json. Returns the
/// manifest paths. When the KB draw keeps no true pair, it is redrawn from the
/// next derived seed.
std::vector<std::filesystem::path> write_synthetic_instances(const std::filesystem::path& out_dir,
                                                             const SynthSpec& spec);

}  // namespace causalkb::pipeline
