#include "causalkb/infer/hlmrf.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "causalkb/core/error.hpp"

namespace causalkb::infer {

double HingePotential::linear(std::span<const double> y) const {
  double l = constant;
  for (const auto& t : terms) l += t.coeff * y[t.target];
  return l;
}

double HingePotential::distance(std::span<const double> y) const {
  return std::max(0.0, linear(y));
}

double HingePotential::upper_bound() const {
  double ub = constant;
  for (const auto& t : terms) ub += std::max(0.0, t.coeff);
  return ub;
}

void HlMrfProblem::validate() const {
  for (std::size_t i = 0; i < potentials.size(); ++i) {
    const auto& p = potentials[i];
    if (!(p.weight > 0.0) || !std::isfinite(p.weight)) {
      throw InvalidArgument(fmt::format("potential {} has invalid weight {}", i, p.weight));
    }
    if (!std::isfinite(p.constant)) {
      throw InvalidArgument(fmt::format("potential {} has a non-finite constant", i));
    }
    for (const auto& t : p.terms) {
      if (t.target >= num_targets) {
        throw InvalidArgument(fmt::format("potential {} references target {} (N={})", i, t.target,
                                          num_targets));
      }
      if (!std::isfinite(t.coeff)) {
        throw InvalidArgument(fmt::format("potential {} has a non-finite coefficient", i));
      }
    }
  }
}

double objective(const HlMrfProblem& problem, std::span<const double> y) {
  if (y.size() != problem.num_targets) {
    throw InvalidArgument(fmt::format("objective: y has {} entries, problem has {} targets",
                                      y.size(), problem.num_targets));
  }
  double total = 0.0;
  for (const auto& p : problem.potentials) total += p.weight * p.distance(y);
  return total;
}

}  // namespace causalkb::infer
