#include "bblab/summation.hpp"

namespace bblab {

namespace {
constexpr std::size_t kLeaf = 16;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= kLeaf) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace bblab
