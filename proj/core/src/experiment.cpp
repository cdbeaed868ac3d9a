#include "bblab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "bblab/errors.hpp"

namespace bblab {

GridFunction spike_function(const GridFunction& base, double mass, double bump_fraction) {
  if (base.dim() != 1) throw DomainError("spike sweep needs a 1D base function");
  if (!(mass >= 0) || !std::isfinite(mass)) throw DomainError("spike mass must be nonnegative");
  if (!(bump_fraction > 0)) throw DomainError("bump fraction must be positive");
  const GridFunction cropped = crop_to_support(base);
  if (cropped.is_zero()) throw DomainError("spike sweep needs a nonzero base");
  const std::size_t support = cropped.size();
  const auto width = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(bump_fraction * static_cast<double>(support))));
  std::vector<double> values(cropped.values().begin(), cropped.values().end());
  values.resize(support + width, 0.0);
  // The bump is always laid out, even at zero height, so every f_m shares a box.
  const double height = mass / (static_cast<double>(width) * base.spacing());
  for (std::size_t i = support; i < support + width; ++i) values[i] = height;
  return GridFunction(cropped.origin(), cropped.spacing(), {support + width}, std::move(values),
                      cropped.zero_threshold());
}

std::vector<SpikeSweepRow> spike_sweep(const GridFunction& base,
                                       const std::vector<double>& masses,
                                       const SpikeSweepConfig& config) {
  const GridFunction g = crop_to_support(base);
  const ConcavityIndex s(config.s);
  std::vector<SpikeSweepRow> rows;
  for (double m : masses) {
    const GridFunction f = spike_function(base, m, config.bump_fraction);
    rows.push_back({m, stability_report(f, g, std::nullopt, config.lambda, s, config.stability)});
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SpikeSweepRow>& rows) {
  out << "param,epsilon,delta,witness_deficit,log_bound,route\n";
  char buf[512];
  for (const auto& row : rows) {
    const auto& r = row.report;
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%s\n", row.mass, r.epsilon, r.delta,
                  r.witness_deficit, r.log_bound, to_string(r.route));
    out << buf;
  }
}

}  // namespace bblab
