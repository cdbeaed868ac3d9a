#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bblab/grid_function.hpp"
#include "bblab/rational.hpp"

namespace bblab {

/// Figalli-Jerison constants in natural-log form. M is the exponent of the
/// deficit threshold e^(-M); sigma is the Hoelder exponent of the bound.
struct FJConstants {
  int n = 0;
  double tau = 0.0;
  double n_override = 1.0;
  long double log_M = 0.0;
  long double log_sigma = 0.0;

  long double sigma() const;
};

/// Requires n >= 2 and tau in (0, 1/2]; every term is evaluated in log space.
FJConstants fj_log_constants(int n, double tau, double n_override = 1.0);

struct BoundValue {
  long double log_value = 0.0;  // log C(eta)
  bool vacuous = true;          // log eta > -M: the threshold is not met
  int dimension = 0;
};

/// log C(eta) = sigma * log(eta) - log(omega_s) - N * log(tau), with sigma and M
/// taken at the given integer dimension and omega_s the fiber ball measure.
/// Throws DomainError for eta <= 0.
BoundValue bound_log_value(double eta, int dimension, double fiber_s, double tau, double n_override = 1.0);

/// mu_f = (omega_s F)^(-1/(n+s)), mu_g likewise.
std::pair<double, double> normalization_scales(double F, double G, int n, double s);

struct SearchConfig {
  std::int64_t initial_step = 8;
  std::size_t max_evaluations = 400;
};

struct Witness {
  GridFunction u;
  GridFunction g_aligned;             // g(x + translation) on the lattice of f
  std::vector<std::int64_t> shift;    // translation in cells
  std::vector<double> translation;    // shift * spacing
  double deficit = 0.0;               // integral(u - f) + integral(u - g_aligned)
  std::size_t evaluations = 0;
};

/// Least 1/s-concave majorant of f and a lattice translate of g, with the
/// translate chosen by coordinate descent from the centroid alignment. Ties go
/// to the lexicographically smallest shift. f and g must share a lattice.
Witness witness_search(const GridFunction& f, const GridFunction& g, double s, const SearchConfig& config = {});

enum class Route { integer_s, rational_lift, integer_part_fallback };

const char* to_string(Route route);

struct StabilityConfig {
  double n_override = 1.0;
  double eta_floor = 1e-12;
  double mass_tolerance = 1e-6;
  std::size_t max_lift_dim = 4;
  SearchConfig search;
};

struct StabilityReport {
  double F = 0.0;
  double G = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  double mu_f = 0.0;
  double mu_g = 0.0;
  std::vector<double> translation;
  double witness_deficit = 0.0;
  double log_bound = 0.0;
  bool vacuous = true;
  Route route = Route::integer_s;

  double s = 0.0;
  double s_effective = 0.0;   // exponent the witness is built for
  int route_dimension = 0;    // dimension of the constants
  double route_epsilon = 0.0; // deficit in the space the route works in
  double eta = 0.0;           // normalized deficit fed to the bound
  bool hypothesis_transfer = true;
  std::size_t search_evaluations = 0;
  std::vector<std::string> warnings;
  std::vector<std::string> notes;
};

struct StabilityRun {
  StabilityReport report;
  GridFunction f_hat;
  GridFunction g_hat;
  Witness witness;
};

/// Full pipeline, keeping the normalized functions and the witness.
StabilityRun stability_analysis(const GridFunction& f,
                                const GridFunction& g,
                                const std::optional<GridFunction>& h,
                                const RationalWeight& lambda,
                                const ConcavityIndex& s,
                                const StabilityConfig& config = {});

StabilityReport stability_report(const GridFunction& f,
                                 const GridFunction& g,
                                 const std::optional<GridFunction>& h,
                                 const RationalWeight& lambda,
                                 const ConcavityIndex& s,
                                 const StabilityConfig& config = {});

}  // namespace bblab
