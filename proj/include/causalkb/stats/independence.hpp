#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "causalkb/core/model.hpp"
#include "causalkb/stats/dataset.hpp"

namespace causalkb::stats {

inline constexpr double kDegenerateFloor = 1e-12;

class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), values_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

/// Pearson correlations of all column pairs: symmetric, unit diagonal.
SquareMatrix correlation_matrix(const Dataset& data);

/// Partial correlation of a and b given `cond`, by the first-order recursion
/// applied once per conditioning vertex. Clamped to [−1,1]. Throws
/// DegenerateConditioning when a recursion denominator is ≤ kDegenerateFloor.
double partial_correlation(const SquareMatrix& corr, Vertex a, Vertex b, const CondSet& cond);

struct FisherZ {
  double z;
  double p;
};

/// z = atanh(r)·√(m − s − 3), two-sided p from the standard normal.
/// Throws InvalidArgument for |r| ≥ 1 or m − s − 3 ≤ 0.
FisherZ fisher_z(double r, std::size_t m, std::size_t s);

/// Standard normal CDF.
double normal_cdf(double x) noexcept;

struct TestResult {
  Vertex a;  // a < b
  Vertex b;
  CondSet cond;
  double r;
  double z;
  double p;
};

/// One test per unordered pair and per conditioning set of size ≤ max_cond
/// drawn from the remaining vertices. Pairs in lexicographic order, sets by
/// size then lexicographic.
std::vector<TestResult> run_all_tests(const Dataset& data, std::size_t max_cond = kDefaultMaxCond);

struct BinningOptions {
  /// Independence truths become ∛p instead of p.
  bool skew_rescale = true;
};

/// p ≤ alpha → Dep/CondDep with truth 1 − p; otherwise Indep/CondIndep with
/// truth ∛p (or p). One atom per test, in test order.
std::vector<ObservedAtom> bin_tests(std::span<const TestResult> tests, double alpha,
                                    BinningOptions options = {});

/// StandardAdj(a,b) = 1 iff the marginal test is dependent and no conditional
/// test for the pair is independent; 0 otherwise. Emits every unordered pair.
/// `atoms` must be binned at the adjacency α.
std::vector<ObservedAtom> standard_adjacency(std::span<const ObservedAtom> atoms,
                                             std::size_t num_vertices);

void write_tests_tsv(std::ostream& out, std::span<const TestResult> tests, const VertexSet& vertices);
void write_atoms_tsv(std::ostream& out, std::span<const ObservedAtom> atoms, const VertexSet& vertices);

}  // namespace causalkb::stats
