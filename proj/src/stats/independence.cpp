#include "causalkb/stats/independence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <ostream>

#include <fmt/format.h>

#include "causalkb/core/error.hpp"
#include "causalkb/io/text.hpp"
#include "causalkb/simd/kernels.hpp"

namespace causalkb::stats {

SquareMatrix correlation_matrix(const Dataset& data) {
  const auto& k = simd::active();
  const std::size_t n = data.cols();
  const std::size_t m = data.rows();

  // Centered, unit-norm copies of every column; correlations are then dot products.
  std::vector<std::vector<double>> unit(n);
  for (Vertex v = 0; v < n; ++v) {
    const auto col = data.column(v);
    auto& c = unit[v];
    c.assign(col.begin(), col.end());
    const double raw_sq = k.dot(c.data(), c.data(), m);
    const double mean = k.sum(c.data(), m) / static_cast<double>(m);
    k.affine(c.data(), mean, 1.0, m);
    const double centered_sq = k.dot(c.data(), c.data(), m);
    if (!(centered_sq > 1e-24 * raw_sq)) {
      throw InvalidArgument(fmt::format("column '{}' has zero variance", data.vertices().name(v)));
    }
    k.affine(c.data(), 0.0, 1.0 / std::sqrt(centered_sq), m);
  }

  SquareMatrix corr(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    corr(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = std::clamp(k.dot(unit[i].data(), unit[j].data(), m), -1.0, 1.0);
      corr(i, j) = r;
      corr(j, i) = r;
    }
  }
  return corr;
}

namespace {

double partial_rec(const SquareMatrix& corr, Vertex a, Vertex b, std::span<const Vertex> cond) {
  if (cond.empty()) return corr(a, b);
  const Vertex c = cond.back();
  const auto rest = cond.first(cond.size() - 1);
  const double r_ab = partial_rec(corr, a, b, rest);
  const double r_ac = partial_rec(corr, a, c, rest);
  const double r_bc = partial_rec(corr, b, c, rest);
  const double ua = 1.0 - r_ac * r_ac;
  const double ub = 1.0 - r_bc * r_bc;
  if (ua * ub <= kDegenerateFloor) {
    const Vertex other = ua <= ub ? a : b;
    throw DegenerateConditioning(
        fmt::format("degenerate conditioning: |r({},{})| is numerically 1", other, c), other, c);
  }
  return std::clamp((r_ab - r_ac * r_bc) / std::sqrt(ua * ub), -1.0, 1.0);
}

}  // namespace

double partial_correlation(const SquareMatrix& corr, Vertex a, Vertex b, const CondSet& cond) {
  const std::size_t n = corr.size();
  if (a >= n || b >= n) throw InvalidArgument("partial_correlation: vertex out of range");
  if (a == b) throw InvalidArgument("partial_correlation: a == b");
  if (cond.contains(a) || cond.contains(b)) {
    throw InvalidArgument("partial_correlation: conditioning set contains an endpoint");
  }
  for (Vertex c : cond.members()) {
    if (c >= n) throw InvalidArgument("partial_correlation: conditioning vertex out of range");
  }
  return partial_rec(corr, a, b, cond.members());
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

FisherZ fisher_z(double r, std::size_t m, std::size_t s) {
  if (!(std::abs(r) < 1.0)) {
    throw InvalidArgument(fmt::format("saturated correlation r={} (|r| must be < 1)", r));
  }
  if (m <= s + 3) {
    throw InvalidArgument(
        fmt::format("insufficient samples: m={} with a conditioning set of size {}", m, s));
  }
  const double z = std::atanh(r) * std::sqrt(static_cast<double>(m - s - 3));
  // 2·(1 − Φ(|z|)) = erfc(|z|/√2), without cancellation in the tail.
  const double p = std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
  return {z, p};
}

std::vector<TestResult> run_all_tests(const Dataset& data, std::size_t max_cond) {
  const std::size_t n = data.cols();
  if (data.rows() <= max_cond + 3) {
    throw InvalidArgument(fmt::format("need more than {} observations for conditioning sets of size {}",
                                      max_cond + 3, max_cond));
  }
  const SquareMatrix corr = correlation_matrix(data);
  std::vector<TestResult> out;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      const std::array<Vertex, 2> ends{a, b};
      for (auto& cond : enumerate_cond_sets(n, ends, max_cond)) {
        const double r = partial_correlation(corr, a, b, cond);
        const auto fz = fisher_z(r, data.rows(), cond.size());
        out.push_back(TestResult{a, b, std::move(cond), r, fz.z, fz.p});
      }
    }
  }
  return out;
}

std::vector<ObservedAtom> bin_tests(std::span<const TestResult> tests, double alpha,
                                    BinningOptions options) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument(fmt::format("alpha={} outside (0,1)", alpha));
  }
  std::vector<ObservedAtom> out;
  out.reserve(tests.size());
  for (const auto& t : tests) {
    const bool marginal = t.cond.empty();
    if (t.p <= alpha) {
      out.push_back(ObservedAtom{marginal ? Predicate::Dep : Predicate::CondDep, t.a, t.b, t.cond,
                                 1.0 - t.p});
    } else {
      const double truth = options.skew_rescale ? std::cbrt(t.p) : t.p;
      out.push_back(ObservedAtom{marginal ? Predicate::Indep : Predicate::CondIndep, t.a, t.b,
                                 t.cond, truth});
    }
  }
  return out;
}

std::vector<ObservedAtom> standard_adjacency(std::span<const ObservedAtom> atoms,
                                             std::size_t num_vertices) {
  const std::size_t n = num_vertices;
  // -1 = no marginal test seen, 0 = independent, 1 = dependent.
  std::vector<int> marginal(n * n, -1);
  std::vector<char> separated(n * n, 0);
  for (const auto& atom : atoms) {
    const Vertex a = std::min(atom.a, atom.b);
    const Vertex b = std::max(atom.a, atom.b);
    if (b >= n) throw InvalidArgument("standard_adjacency: vertex out of range");
    switch (atom.predicate) {
      case Predicate::Dep: marginal[a * n + b] = 1; break;
      case Predicate::Indep: marginal[a * n + b] = 0; break;
      case Predicate::CondIndep: separated[a * n + b] = 1; break;
      default: break;
    }
  }
  std::vector<ObservedAtom> out;
  out.reserve(n * (n - 1) / 2);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      const int m = marginal[a * n + b];
      if (m < 0) {
        throw InvalidArgument(fmt::format("standard_adjacency: no marginal test for pair ({},{})", a, b));
      }
      const bool adjacent = m == 1 && !separated[a * n + b];
      out.push_back(ObservedAtom{Predicate::StandardAdj, a, b, {}, adjacent ? 1.0 : 0.0});
    }
  }
  return out;
}

namespace {

std::string join_names(const CondSet& cond, const VertexSet& vertices) {
  std::string s;
  for (std::size_t i = 0; i < cond.size(); ++i) {
    if (i) s += '|';
    s += vertices.name(cond.members()[i]);
  }
  return s;
}

}  // namespace

void write_tests_tsv(std::ostream& out, std::span<const TestResult> tests, const VertexSet& vertices) {
  out << "a\tb\tcond\tr\tz\tp\n";
  for (const auto& t : tests) {
    out << vertices.name(t.a) << '\t' << vertices.name(t.b) << '\t' << join_names(t.cond, vertices)
        << '\t' << io::format_double(t.r) << '\t' << io::format_double(t.z) << '\t'
        << io::format_double(t.p) << '\n';
  }
}

void write_atoms_tsv(std::ostream& out, std::span<const ObservedAtom> atoms, const VertexSet& vertices) {
  out << "predicate\ta\tb\tcond\ttruth\n";
  for (const auto& atom : atoms) {
    out << to_string(atom.predicate) << '\t' << vertices.name(atom.a) << '\t'
        << vertices.name(atom.b) << '\t' << join_names(atom.cond, vertices) << '\t'
        << io::format_double(atom.truth) << '\n';
  }
}

}  // namespace causalkb::stats
