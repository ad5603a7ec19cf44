#include "causalkb/stats/dataset.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "causalkb/core/error.hpp"
#include "causalkb/io/text.hpp"

namespace causalkb::stats {

Dataset::Dataset(VertexSet vertices, std::size_t rows, std::vector<double> column_major)
    : vertices_(std::move(vertices)), rows_(rows), values_(std::move(column_major)) {
  if (values_.size() != rows_ * vertices_.size()) {
    throw InvalidArgument(fmt::format("dataset has {} values, expected {}x{}", values_.size(),
                                      rows_, vertices_.size()));
  }
  if (rows_ < 2) throw InvalidArgument("dataset needs at least two observations");
  for (Vertex v = 0; v < vertices_.size(); ++v) {
    const auto col = column(v);
    double lo = col[0];
    double hi = col[0];
    for (double x : col) {
      if (!std::isfinite(x)) {
        throw InvalidArgument(fmt::format("column '{}' has a non-finite value", vertices_.name(v)));
      }
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    if (lo == hi) {
      throw InvalidArgument(fmt::format("column '{}' has zero variance", vertices_.name(v)));
    }
  }
}

Dataset Dataset::from_rows(VertexSet vertices, const std::vector<std::vector<double>>& rows) {
  const std::size_t n = vertices.size();
  std::vector<double> values(rows.size() * n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != n) {
      throw InvalidArgument(fmt::format("row {} has {} values, expected {}", r, rows[r].size(), n));
    }
    for (std::size_t c = 0; c < n; ++c) values[c * rows.size() + r] = rows[r][c];
  }
  return Dataset(std::move(vertices), rows.size(), std::move(values));
}

std::span<const double> Dataset::column(Vertex v) const {
  if (v >= vertices_.size()) throw InvalidArgument(fmt::format("column {} out of range", v));
  return std::span<const double>(values_).subspan(v * rows_, rows_);
}

Dataset parse_csv(std::istream& in, std::string_view source) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> names;
  while (std::getline(in, line)) {
    ++line_no;
    if (!io::trim(line).empty()) break;
  }
  if (io::trim(line).empty()) throw FormatError(fmt::format("{}: missing header row", source));
  for (auto field : io::split(io::trim(line), ',')) names.emplace_back(field);
  VertexSet vertices(std::move(names));

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = io::trim(line);
    if (body.empty()) continue;
    const auto fields = io::split(body, ',');
    if (fields.size() != vertices.size()) {
      throw FormatError(fmt::format("{}:{}: expected {} columns, got {}", source, line_no,
                                    vertices.size(), fields.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (auto f : fields) row.push_back(io::parse_double(f, fmt::format("{}:{}", source, line_no)));
    rows.push_back(std::move(row));
  }
  return Dataset::from_rows(std::move(vertices), rows);
}

Dataset read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open data file '{}'", path.string()));
  return parse_csv(in, path.string());
}

void write_csv(std::ostream& out, const Dataset& data) {
  const auto& names = data.vertices().names();
  for (std::size_t c = 0; c < names.size(); ++c) out << (c ? "," : "") << names[c];
  out << '\n';
  for (std::size_t r = 0; r < data.rows(); ++r) {
    for (Vertex c = 0; c < data.cols(); ++c) {
      out << (c ? "," : "") << io::format_double(data.at(r, c));
    }
    out << '\n';
  }
}

}  // namespace causalkb::stats
