#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "bblab/errors.hpp"
#include "bblab/rational.hpp"

namespace bblab::detail {

inline constexpr std::int64_t kMaxRefinement = 16;

// Lattice on which (1-l) x + l y lands when x and y are cell centers of two
// grids with spacing h and l = j/k. Index gamma = (k-j) alpha + j beta.
struct RefinedLattice {
  std::vector<double> origin;
  double spacing;
  std::int64_t first_coeff;   // k - j
  std::int64_t second_coeff;  // j
  std::int64_t refinement;    // k
};

inline RefinedLattice refined_lattice(std::span<const double> origin_a,
                                      std::span<const double> origin_b,
                                      double spacing_a,
                                      double spacing_b,
                                      const RationalWeight& lambda) {
  if (origin_a.size() != origin_b.size()) throw AlignmentError("inputs differ in dimension");
  if (std::abs(spacing_a - spacing_b) > 1e-12 * std::max(spacing_a, spacing_b)) {
    throw AlignmentError("inputs must share the same spacing");
  }
  if (lambda.den() > kMaxRefinement) {
    throw CapacityError("weight denominator " + std::to_string(lambda.den()) +
                        " exceeds the refinement cap of 16");
  }
  const double h = spacing_a;
  const double k = static_cast<double>(lambda.den());
  RefinedLattice out;
  out.spacing = h / k;
  out.first_coeff = lambda.complement_num();
  out.second_coeff = lambda.num();
  out.refinement = lambda.den();
  out.origin.resize(origin_a.size());
  for (std::size_t a = 0; a < origin_a.size(); ++a) {
    // Centers: o + (i + 1/2) h. Their combination sits at
    // (1-l) o_a + l o_b + h/2 + gamma h/k = origin + (gamma + 1/2) h/k.
    out.origin[a] = lambda.complement() * origin_a[a] + lambda.value() * origin_b[a] + 0.5 * h -
                    0.5 * out.spacing;
  }
  return out;
}

}  // namespace bblab::detail
