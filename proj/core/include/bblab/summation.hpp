#pragma once

#include <span>

namespace bblab {

/// Pairwise sum in a fixed, input-order-determined reduction tree. The result
/// only depends on the sequence, never on threads or call site.
double pairwise_sum(std::span<const double> values);

}  // namespace bblab
