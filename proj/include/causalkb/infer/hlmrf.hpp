#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace causalkb::infer {

struct Term {
  std::uint32_t target;
  double coeff;

  auto operator<=>(const Term&) const = default;
};

/// w · max(0, constant + Σ coeff·y[target]).
struct HingePotential {
  double weight = 1.0;
  double constant = 0.0;
  std::vector<Term> terms;

  double linear(std::span<const double> y) const;
  double distance(std::span<const double> y) const;
  /// Maximum of the linear part over the unit box.
  double upper_bound() const;
};

struct HlMrfProblem {
  std::size_t num_targets = 0;
  std::vector<HingePotential> potentials;

  /// Throws InvalidArgument on an out-of-range target, a non-positive or
  /// non-finite weight, or a non-finite coefficient.
  void validate() const;
};

/// Σ w·max(0, l(y)). Throws InvalidArgument on a dimension mismatch.
double objective(const HlMrfProblem& problem, std::span<const double> y);

}  // namespace causalkb::infer
