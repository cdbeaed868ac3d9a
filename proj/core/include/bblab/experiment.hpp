#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bblab/grid_function.hpp"
#include "bblab/rational.hpp"
#include "bblab/stability.hpp"

namespace bblab {

struct SpikeSweepConfig {
  RationalWeight lambda{1, 2};
  double s = 1.0;
  double bump_fraction = 0.05;  // bump width relative to the support length
  StabilityConfig stability;
};

struct SpikeSweepRow {
  double mass = 0.0;
  StabilityReport report;
};

/// f_m = base + bump of mass m on the cells right after the support's last
/// cell, g = base. One stability report per mass. The base must be 1D.
std::vector<SpikeSweepRow> spike_sweep(const GridFunction& base,
                                       const std::vector<double>& masses,
                                       const SpikeSweepConfig& config = {});

/// The spiked function used for mass m.
GridFunction spike_function(const GridFunction& base, double mass, double bump_fraction);

/// Header "param,epsilon,delta,witness_deficit,log_bound,route", one row per
/// mass, numbers with 17 significant digits.
void write_sweep_csv(std::ostream& out, const std::vector<SpikeSweepRow>& rows);

}  // namespace bblab
