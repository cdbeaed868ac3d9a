#include "bblab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "bblab/bodies.hpp"
#include "bblab/envelope.hpp"
#include "bblab/errors.hpp"
#include "bblab/means.hpp"
#include "bblab/parallel.hpp"
#include "bblab/supconv.hpp"

namespace bblab {

long double FJConstants::sigma() const { return std::exp(log_sigma); }

FJConstants fj_log_constants(int n, double tau, double n_override) {
  if (n < 2) throw DomainError("Figalli-Jerison constants need dimension n >= 2");
  if (!(tau > 0.0 && tau <= 0.5)) throw DomainError("tau must lie in (0, 1/2]");
  if (!(n_override > 0) || !std::isfinite(n_override)) throw DomainError("N must be positive");
  const long double t = tau;
  const long double p3n = std::pow(3.0L, n);
  const long double log2 = std::log(2.0L);
  const long double logn = std::log(static_cast<long double>(n));
  const long double logt = std::log(t);
  const long double loglogt = std::log(std::fabs(logt));
  FJConstants c;
  c.n = n;
  c.tau = tau;
  c.n_override = n_override;
  c.log_M = 9.0L * p3n * log2 + p3n * logn + p3n * loglogt - p3n * logt;
  c.log_sigma = p3n * logt - 3.0L * p3n * log2 - p3n * logn - p3n * loglogt;
  return c;
}

BoundValue bound_log_value(double eta, int dimension, double fiber_s, double tau, double n_override) {
  if (!(eta > 0) || !std::isfinite(eta)) throw DomainError("normalized deficit must be positive");
  const FJConstants c = fj_log_constants(dimension, tau, n_override);
  const long double log_eta = std::log(static_cast<long double>(eta));
  BoundValue out;
  out.dimension = dimension;
  out.log_value = c.sigma() * log_eta - std::log(static_cast<long double>(unit_ball_measure(fiber_s))) -
                  static_cast<long double>(n_override) * std::log(static_cast<long double>(tau));
  out.vacuous = !(log_eta <= -std::exp(c.log_M));
  return out;
}

std::pair<double, double> normalization_scales(double F, double G, int n, double s) {
  if (!(F > 0) || !(G > 0)) throw DomainError("normalization needs positive masses");
  const double omega = unit_ball_measure(s);
  const double e = -1.0 / (static_cast<double>(n) + s);
  return {std::pow(omega * F, e), std::pow(omega * G, e)};
}

namespace {

struct Candidate {
  std::vector<std::int64_t> shift;
  double deficit = 0.0;
};

bool better(const Candidate& a, const Candidate& b) {
  return a.deficit != b.deficit ? a.deficit < b.deficit : a.shift < b.shift;
}

GridFunction aligned(const GridFunction& g, const std::vector<std::int64_t>& shift) {
  std::vector<std::int64_t> back(shift.size());
  for (std::size_t a = 0; a < shift.size(); ++a) back[a] = -shift[a];
  return shift_cells(g, back);
}

}  // namespace

Witness witness_search(const GridFunction& f, const GridFunction& g, double s, const SearchConfig& config) {
  if (!(s > 0)) throw DomainError("concavity index must be positive");
  if (f.dim() != g.dim()) throw AlignmentError("witness search needs equal dimensions");
  if (!lattice_compatible(f, g)) throw AlignmentError("witness search needs a shared lattice");
  if (f.is_zero() || g.is_zero()) throw DomainError("witness search needs nonempty supports");
  const std::size_t n = f.dim();
  const double h = f.spacing();
  const double p = 1.0 / s;

  auto evaluate = [&](const std::vector<std::int64_t>& shift) {
    const GridFunction ga = aligned(g, shift);
    const GridFunction u = p_concave_envelope(pointwise_max(f, ga), p);
    return envelope_deficit(f, u) + envelope_deficit(ga, u);
  };

  const auto cf = centroid(f);
  const auto cg = centroid(g);
  std::vector<std::int64_t> seed(n);
  for (std::size_t a = 0; a < n; ++a) seed[a] = std::llround((cg[a] - cf[a]) / h);

  std::map<std::vector<std::int64_t>, double> cache;
  Candidate best{seed, evaluate(seed)};
  cache[seed] = best.deficit;

  std::int64_t step = std::max<std::int64_t>(1, config.initial_step);
  while (step >= 1 && cache.size() < config.max_evaluations) {
    std::vector<std::vector<std::int64_t>> fresh;
    std::vector<std::vector<std::int64_t>> around;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::int64_t sign : {-1, 1}) {
        auto c = best.shift;
        c[a] += sign * step;
        around.push_back(c);
        if (!cache.count(c) &&
            std::find(fresh.begin(), fresh.end(), c) == fresh.end() &&
            cache.size() + fresh.size() < config.max_evaluations) {
          fresh.push_back(c);
        }
      }
    }
    std::vector<double> values(fresh.size());
    parallel_for(fresh.size(), [&](std::size_t begin, std::size_t end, std::size_t) {
      for (std::size_t i = begin; i < end; ++i) values[i] = evaluate(fresh[i]);
    });
    for (std::size_t i = 0; i < fresh.size(); ++i) cache[fresh[i]] = values[i];

    Candidate next = best;
    for (const auto& c : around) {
      const auto it = cache.find(c);
      if (it == cache.end()) continue;
      const Candidate cand{c, it->second};
      if (better(cand, next)) next = cand;
    }
    if (next.shift == best.shift) {
      step /= 2;
    } else {
      best = next;
    }
  }

  GridFunction ga = aligned(g, best.shift);
  GridFunction u = p_concave_envelope(pointwise_max(f, ga), p);
  std::vector<double> translation(n);
  for (std::size_t a = 0; a < n; ++a) translation[a] = static_cast<double>(best.shift[a]) * h;
  return Witness{std::move(u), std::move(ga), best.shift, std::move(translation), best.deficit, cache.size()};
}

const char* to_string(Route route) {
  switch (route) {
    case Route::integer_s: return "integer-s";
    case Route::rational_lift: return "rational-lift";
    case Route::integer_part_fallback: return "integer-part-fallback";
  }
  return "?";
}

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Normalizes the pair with exponent s in dimension n, puts both on the finer
// of the two image lattices and searches the witness.
StabilityRun integer_pipeline(StabilityReport report,
                              const GridFunction& f,
                              const GridFunction& g,
                              int n,
                              double s,
                              double F,
                              double G,
                              const StabilityConfig& config) {
  const auto [mu_f, mu_g] = normalization_scales(F, G, n, s);
  const std::vector<double> zero(static_cast<std::size_t>(n), 0.0);
  GridFunction f_hat = homothety(f, mu_f, zero, s);
  GridFunction g_hat = homothety(g, mu_g, zero, s);
  if (f_hat.spacing() <= g_hat.spacing()) {
    g_hat = resample(g_hat, f_hat.origin(), f_hat.spacing());
  } else {
    f_hat = resample(f_hat, g_hat.origin(), g_hat.spacing());
  }
  if (mu_f != mu_g) report.notes.push_back("the coarser normalized function was resampled to the finer lattice");
  Witness w = witness_search(f_hat, g_hat, s, config.search);
  report.mu_f = mu_f;
  report.mu_g = mu_g;
  report.translation = w.translation;
  report.witness_deficit = w.deficit;
  report.search_evaluations = w.evaluations;
  return StabilityRun{std::move(report), std::move(f_hat), std::move(g_hat), std::move(w)};
}

void attach_bound(StabilityReport& r, double route_rhs, double fiber_s, double tau, const StabilityConfig& config) {
  double eta = r.route_epsilon / route_rhs;
  if (!(eta > 0)) {
    r.notes.push_back("deficit is not positive; the bound is evaluated at the floor " +
                      format_number(config.eta_floor));
    eta = config.eta_floor;
  }
  r.eta = eta;
  const BoundValue b = bound_log_value(eta, r.route_dimension, fiber_s, tau, config.n_override);
  r.log_bound = static_cast<double>(b.log_value);
  r.vacuous = b.vacuous;
  if (r.vacuous) r.notes.push_back("the deficit is above the Figalli-Jerison threshold; the bound is vacuous");
}

}  // namespace

StabilityRun stability_analysis(const GridFunction& f,
                                const GridFunction& g,
                                const std::optional<GridFunction>& h,
                                const RationalWeight& lambda,
                                const ConcavityIndex& s,
                                const StabilityConfig& config) {
  if (f.dim() != g.dim()) throw AlignmentError("f and g must have the same dimension");
  const int n = static_cast<int>(f.dim());
  StabilityReport r;
  r.F = integrate(f);
  r.G = integrate(g);
  if (!(r.F > 0) || !(r.G > 0)) throw DomainError("stability needs positive masses");
  const GridFunction hh = h ? *h : sup_convolution(f, g, lambda, s);
  r.lhs = integrate(hh);
  r.rhs = q_mean(r.F, r.G, lambda.value(), MeanOrder(s.dimension_exponent(n)));
  r.epsilon = r.lhs - r.rhs;
  r.delta = r.epsilon / r.rhs;
  r.s = s.value();
  const double tau = lambda.tau();

  bool lift = false;
  if (s.is_integer()) {
    r.route = Route::integer_s;
  } else if (s.is_rational()) {
    const auto p = s.numerator(), q = s.denominator();
    if (n * q + p <= static_cast<std::int64_t>(config.max_lift_dim) && n * q <= 2) {
      lift = true;
      r.route = Route::rational_lift;
    } else {
      r.route = Route::integer_part_fallback;
      r.notes.push_back("product lift exceeds the dimension limit; using the integer-part route");
    }
  } else {
    r.route = Route::integer_part_fallback;
  }

  if (r.route == Route::integer_s) {
    r.s_effective = s.value();
    r.route_dimension = n + static_cast<int>(s.numerator());
    r.route_epsilon = r.epsilon;
    auto run = integer_pipeline(r, f, g, n, s.value(), r.F, r.G, config);
    attach_bound(run.report, r.rhs, s.value(), tau, config);
    return run;
  }

  if (lift) {
    const auto p = s.numerator();
    const auto q = static_cast<int>(s.denominator());
    const GridFunction ft = product_lift(f, q, config.max_lift_dim);
    const GridFunction gt = product_lift(g, q, config.max_lift_dim);
    const double rhs_q = std::pow(r.rhs, q);
    r.s_effective = static_cast<double>(p);
    r.route_dimension = n * q + static_cast<int>(p);
    r.route_epsilon = std::pow(r.lhs, q) - rhs_q;
    r.notes.push_back("witness built for the product lift; its deficit is measured in the lifted space");
    auto run = integer_pipeline(r, ft, gt, n * q, static_cast<double>(p), std::pow(r.F, q), std::pow(r.G, q),
                                config);
    attach_bound(run.report, rhs_q, static_cast<double>(p), tau, config);
    return run;
  }

  const auto s_next = static_cast<double>(s.integer_part() + 1);
  const ConcavityIndex s_prime(s_next);
  r.s_effective = s_next;
  r.route_dimension = n + static_cast<int>(s_next);
  const double rhs_prime = q_mean(r.F, r.G, lambda.value(), MeanOrder(1.0 / (n + s_next)));
  r.route_epsilon = r.lhs - rhs_prime;

  // The weaker hypothesis at s' follows from the one at s by monotonicity of means.
  const GridFunction h_prime = sup_convolution(f, g, lambda, s_prime);
  bool transfer = rhs_prime <= r.rhs * (1.0 + 1e-12);
  if (lattice_compatible(hh, h_prime)) {
    const auto [eh, ep] = on_common_grid(hh, h_prime);
    const double slack = 1e-12 * std::max(1.0, ep.max_value());
    for (std::size_t i = 0; i < eh.size() && transfer; ++i) {
      if (eh.values()[i] < ep.values()[i] - slack) transfer = false;
    }
  } else {
    transfer = transfer && r.lhs >= integrate(h_prime) * (1.0 - 1e-12);
    r.notes.push_back("h is not on the supremal-convolution lattice; the transfer was checked on integrals");
  }
  r.hypothesis_transfer = transfer;
  if (!transfer) r.warnings.push_back("the hypothesis does not transfer to the integer exponent");
  if (std::fabs(r.F - 1.0) > config.mass_tolerance || std::fabs(r.G - 1.0) > config.mass_tolerance) {
    r.warnings.push_back("masses are not normalized (F = " + format_number(r.F) + ", G = " +
                         format_number(r.G) + "); the integer-part route assumes unit masses");
  }
  auto run = integer_pipeline(r, f, g, n, s_next, r.F, r.G, config);
  attach_bound(run.report, rhs_prime, s_next, tau, config);
  return run;
}

StabilityReport stability_report(const GridFunction& f,
                                 const GridFunction& g,
                                 const std::optional<GridFunction>& h,
                                 const RationalWeight& lambda,
                                 const ConcavityIndex& s,
                                 const StabilityConfig& config) {
  return stability_analysis(f, g, h, lambda, s, config).report;
}

}  // namespace bblab
