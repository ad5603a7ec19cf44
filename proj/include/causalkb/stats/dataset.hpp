#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "causalkb/core/model.hpp"

namespace causalkb::stats {

/// m observations of n variables, stored column-major. Every value is finite
/// and every column has nonzero variance.
class Dataset {
 public:
  Dataset(VertexSet vertices, std::size_t rows, std::vector<double> column_major);
  static Dataset from_rows(VertexSet vertices, const std::vector<std::vector<double>>& rows);

  const VertexSet& vertices() const noexcept { return vertices_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return vertices_.size(); }

  std::span<const double> column(Vertex v) const;
  double at(std::size_t row, Vertex col) const { return values_[col * rows_ + row]; }

 private:
  VertexSet vertices_;
  std::size_t rows_;
  std::vector<double> values_;
};

/// CSV with a header row of vertex names.
Dataset read_csv(const std::filesystem::path& path);
Dataset parse_csv(std::istream& in, std::string_view source);
void write_csv(std::ostream& out, const Dataset& data);

}  // namespace causalkb::stats
