#include "causalkb/pipeline/instance.hpp"

#include <fstream>
#include <ostream>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "causalkb/core/error.hpp"
#include "causalkb/io/text.hpp"
#include "causalkb/synth/synth.hpp"

namespace causalkb::pipeline {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

InstanceManifest load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open manifest '{}'", path.string()));
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(fmt::format("{}: invalid JSON: {}", path.string(), e.what()));
  }
  const fs::path base = path.parent_path();
  auto required = [&](const char* key) -> std::string {
    if (!j.contains(key) || !j[key].is_string()) {
      throw FormatError(fmt::format("{}: missing string field \"{}\"", path.string(), key));
    }
    return j[key].get<std::string>();
  };
  auto optional_path = [&](const char* key) -> std::optional<fs::path> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    if (!j[key].is_string()) throw FormatError(fmt::format("{}: \"{}\" must be a string", path.string(), key));
    return base / j[key].get<std::string>();
  };

  InstanceManifest m;
  m.name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>()
                                                        : path.parent_path().filename().string();
  m.data = base / required("data");
  m.gold = base / required("gold");
  m.affinity = optional_path("affinity");
  m.ppi = optional_path("ppi");
  if (j.contains("affinity_scale")) {
    const auto& s = j["affinity_scale"];
    if (s.is_string() && s.get<std::string>() == "file-max") {
      m.affinity_scale = std::nullopt;
    } else if (s.is_number() && s.get<double>() > 0.0) {
      m.affinity_scale = s.get<double>();
    } else {
      throw FormatError(fmt::format("{}: affinity_scale must be a positive number or \"file-max\"",
                                    path.string()));
    }
  }
  return m;
}

void write_manifest(const fs::path& path, const InstanceManifest& m) {
  const fs::path base = path.parent_path();
  auto rel = [&](const fs::path& p) { return p.lexically_relative(base).generic_string(); };
  ordered_json j;
  j["name"] = m.name;
  j["data"] = rel(m.data);
  if (m.affinity) j["affinity"] = rel(*m.affinity);
  if (m.ppi) j["ppi"] = rel(*m.ppi);
  j["gold"] = rel(m.gold);
  if (m.affinity_scale) {
    j["affinity_scale"] = *m.affinity_scale;
  } else {
    j["affinity_scale"] = "file-max";
  }
  io::write_atomically(path, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

std::vector<Edge> read_gold(const fs::path& path, const VertexSet& vertices) {
  std::set<Edge> edges;
  io::for_each_data_line(path, [&](std::size_t line_no, std::string_view line) {
    const auto fields = io::split_fields(line);
    const auto where = fmt::format("{}:{}", path.string(), line_no);
    if (fields.size() != 2) {
      throw FormatError(fmt::format("{}: expected 2 columns (from to), got {}", where, fields.size()));
    }
    const auto from = vertices.find(fields[0]);
    const auto to = vertices.find(fields[1]);
    if (!from || !to) throw FormatError(fmt::format("{}: gold edge names an unknown vertex", where));
    if (*from == *to) throw FormatError(fmt::format("{}: gold edge is a self-loop", where));
    edges.insert(Edge{*from, *to});
  });
  return {edges.begin(), edges.end()};
}

void write_gold(std::ostream& out, std::span<const Edge> edges, const VertexSet& vertices) {
  out << "# from\tto\n";
  for (const auto& e : edges) out << vertices.name(e.from) << '\t' << vertices.name(e.to) << '\n';
}

NetworkInstance load_instance(const InstanceManifest& manifest) {
  auto data = stats::read_csv(manifest.data);
  std::optional<kb::KbEvidence> kb;
  if (manifest.affinity) kb = kb::load_affinities(*manifest.affinity, data.vertices(), manifest.affinity_scale);
  std::vector<ObservedAtom> ppi;
  if (manifest.ppi) ppi = kb::load_ppi(*manifest.ppi, data.vertices()).atoms;
  auto gold = read_gold(manifest.gold, data.vertices());
  return NetworkInstance{manifest.name, std::move(data), std::move(kb), std::move(ppi), std::move(gold)};
}

NetworkInstance load_instance(const fs::path& manifest_path) {
  return load_instance(load_manifest(manifest_path));
}

std::vector<fs::path> write_synthetic_instances(const fs::path& out_dir, const SynthSpec& spec) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    throw IoError(fmt::format("cannot create output directory '{}'", out_dir.string()));
  }
  std::vector<fs::path> manifests;
  for (std::size_t i = 0; i < spec.count; ++i) {
    const std::uint64_t base = synth::mix_seed(spec.seed, i);
    const auto dag = synth::sample_dag(spec.n, spec.edge_prob, synth::mix_seed(base, 0));
    const auto data = synth::simulate_sem(dag, spec.m, synth::mix_seed(base, 1));

    std::optional<kb::KbEvidence> kb;
    for (std::uint64_t attempt = 0; attempt < 1000 && !kb; ++attempt) {
      try {
        kb = synth::corrupt_kb(dag, spec.kb_precision, spec.kb_recall, synth::mix_seed(base, 2 + attempt));
      } catch (const InvalidArgument&) {
        if (dag.edges.empty()) break;
      }
    }
    if (!kb) kb = kb::KbEvidence{};

    const auto name = fmt::format("inst{:02}", i);
    const fs::path dir = out_dir / name;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(fmt::format("cannot create '{}'", dir.string()));

    InstanceManifest m;
    m.name = name;
    m.data = dir / "data.csv";
    m.affinity = dir / "affinity.tsv";
    m.gold = dir / "gold.tsv";
    m.affinity_scale = kb->scale_max;
    io::write_atomically(m.data, [&](std::ostream& out) { stats::write_csv(out, data); });
    io::write_atomically(*m.affinity, [&](std::ostream& out) {
      kb::write_affinities_tsv(out, *kb, data.vertices());
    });
    const auto gold = dag.edge_list();
    io::write_atomically(m.gold, [&](std::ostream& out) { write_gold(out, gold, data.vertices()); });
    const fs::path manifest_path = dir / "manifest.json";
    write_manifest(manifest_path, m);
    manifests.push_back(manifest_path);
  }
  return manifests;
}

}  // namespace causalkb::pipeline
