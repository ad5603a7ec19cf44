#include "causalkb/kb/evidence.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "causalkb/core/error.hpp"
#include "causalkb/io/text.hpp"

namespace causalkb::kb {

namespace {

struct PairRow {
  Vertex a;
  Vertex b;
};

// nullopt: row references an unknown vertex or names the same vertex twice.
std::optional<PairRow> resolve_pair(std::string_view first, std::string_view second,
                                    const VertexSet& vertices) {
  const auto a = vertices.find(first);
  const auto b = vertices.find(second);
  if (!a || !b || *a == *b) return std::nullopt;
  return PairRow{std::min(*a, *b), std::max(*a, *b)};
}

}  // namespace

KbEvidence load_affinities(const std::filesystem::path& path, const VertexSet& vertices,
                           std::optional<double> scale_max) {
  KbEvidence kb;
  double file_max = 0.0;
  io::for_each_data_line(path, [&](std::size_t line_no, std::string_view line) {
    const auto fields = io::split_fields(line);
    const auto where = fmt::format("{}:{}", path.string(), line_no);
    if (fields.size() != 3) {
      throw FormatError(fmt::format("{}: expected 3 columns (geneA geneB score), got {}", where,
                                    fields.size()));
    }
    const double score = io::parse_double(fields[2], where);
    if (!(score >= 0.0) || !std::isfinite(score)) {
      throw FormatError(fmt::format("{}: affinity score must be a nonnegative number", where));
    }
    const auto pair = resolve_pair(fields[0], fields[1], vertices);
    if (!pair) {
      ++kb.skipped_rows;
      return;
    }
    file_max = std::max(file_max, score);
    auto [it, inserted] = kb.affinities.emplace(std::make_pair(pair->a, pair->b), score);
    if (!inserted) it->second = std::max(it->second, score);
  });
  if (scale_max) {
    kb.scale_max = *scale_max;
  } else {
    kb.scale_max = file_max > 0.0 ? file_max : 1.0;
  }
  return kb;
}

std::vector<ObservedAtom> to_textadj(const KbEvidence& kb) {
  if (!(kb.scale_max > 0.0)) {
    throw InvalidArgument(fmt::format("affinity scale_max must be positive, got {}", kb.scale_max));
  }
  std::vector<ObservedAtom> out;
  for (const auto& [pair, raw] : kb.affinities) {
    if (raw <= 0.0) continue;
    out.push_back(ObservedAtom{Predicate::TextAdj, pair.first, pair.second, {},
                               std::min(1.0, raw / kb.scale_max)});
  }
  return out;
}

PpiEvidence load_ppi(const std::filesystem::path& path, const VertexSet& vertices) {
  PpiEvidence ppi;
  std::set<std::pair<Vertex, Vertex>> edges;
  io::for_each_data_line(path, [&](std::size_t line_no, std::string_view line) {
    const auto fields = io::split_fields(line);
    if (fields.size() != 2) {
      throw FormatError(fmt::format("{}:{}: expected 2 columns (geneA geneB), got {}",
                                    path.string(), line_no, fields.size()));
    }
    const auto pair = resolve_pair(fields[0], fields[1], vertices);
    if (!pair) {
      ++ppi.skipped_rows;
      return;
    }
    edges.emplace(pair->a, pair->b);
  });
  for (const auto& [a, b] : edges) {
    ppi.atoms.push_back(ObservedAtom{Predicate::LocalPPI, a, b, {}, 1.0});
  }
  return ppi;
}

void write_affinities_tsv(std::ostream& out, const KbEvidence& kb, const VertexSet& vertices) {
  out << "# geneA\tgeneB\tscore\n";
  for (const auto& [pair, raw] : kb.affinities) {
    out << vertices.name(pair.first) << '\t' << vertices.name(pair.second) << '\t'
        << io::format_double(raw) << '\n';
  }
}

}  // namespace causalkb::kb
