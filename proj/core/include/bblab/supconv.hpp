#pragma once

#include <optional>

#include "bblab/grid_function.hpp"
#include "bblab/rational.hpp"

namespace bblab {

/// Discrete (1/s, lambda)-supremal convolution.
///
/// For every pair of support cells x of f and y of g, the output cell centered
/// at (1-l) x + l y (an exact point of the lattice refined by the denominator of
/// lambda) receives ((1-l) f(x)^(1/s) + l g(y)^(1/s))^s; each output cell keeps
/// the maximum it receives and cells receiving nothing are zero. The output box
/// covers (1-l) box(f) + l box(g).
///
/// Throws AlignmentError when spacings differ, CapacityError when the weight
/// denominator exceeds 16.
GridFunction sup_convolution(const GridFunction& f,
                             const GridFunction& g,
                             const RationalWeight& lambda,
                             const ConcavityIndex& s);

struct BblDeficit {
  double lhs = 0.0;      // integral of h
  double rhs = 0.0;      // M_{1/(n+s)}(F, G; lambda)
  double deficit = 0.0;  // lhs - rhs
  double delta = 0.0;    // deficit / rhs
};

/// Gap in the Borell-Brascamp-Lieb inequality for (f, g, h). When h is absent
/// the supremal convolution is used. Throws DomainError on zero mass.
BblDeficit bbl_deficit(const GridFunction& f,
                       const GridFunction& g,
                       const std::optional<GridFunction>& h,
                       const RationalWeight& lambda,
                       const ConcavityIndex& s);

}  // namespace bblab
