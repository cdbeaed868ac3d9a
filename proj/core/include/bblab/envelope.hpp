#pragma once

#include "bblab/grid_function.hpp"

namespace bblab {

inline constexpr double kDefaultConcavityTolerance = 1e-6;

/// Least concave majorant of the sampled values over the convex hull of the
/// support, evaluated on the same grid (zero off the hull). Dimensions 1 and 2.
///
/// Values are quantized to 50-bit integers relative to the maximum before the
/// hull is built, so orientation decisions are exact; the majorant is then
/// interpolated from the original values and clamped to stay >= w.
GridFunction concave_envelope(const GridFunction& w);

/// (concave_envelope(f^p))^(1/p), the least p-concave majorant.
GridFunction p_concave_envelope(const GridFunction& f, double p);

/// Max gap between f / max(f) and its p-concave envelope is at most tol.
bool is_p_concave(const GridFunction& f, double p, double tol = kDefaultConcavityTolerance);

/// Integral of u - f over the union of both boxes. Negative cell gaps down to
/// -1e-9 are treated as rounding and clamped; anything lower is a DomainError.
double envelope_deficit(const GridFunction& f, const GridFunction& u);

}  // namespace bblab
