#include "bblab/means.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bblab/errors.hpp"
#include "bblab/rational.hpp"

namespace bblab {

MeanOrder::MeanOrder(double q) : q_(q) {
  if (std::isnan(q)) throw DomainError("mean order must not be NaN");
}

bool MeanOrder::is_plus_infinity() const { return std::isinf(q_) && q_ > 0; }
bool MeanOrder::is_minus_infinity() const { return std::isinf(q_) && q_ < 0; }

namespace {

template <typename Real>
Real mean_impl(Real a, Real b, Real lambda, MeanOrder order) {
  using std::pow;
  if (!(a >= 0) || !(b >= 0) || !std::isfinite(static_cast<double>(a)) ||
      !std::isfinite(static_cast<double>(b))) {
    throw DomainError("q_mean arguments must be finite and nonnegative");
  }
  if (!(lambda > 0 && lambda < 1)) throw DomainError("q_mean weight must lie in (0,1)");
  if (a == 0 || b == 0) return Real(0);
  if (order.is_plus_infinity()) return std::max(a, b);
  if (order.is_minus_infinity()) return std::min(a, b);

  const Real q = static_cast<Real>(order.value());
  const Real w0 = Real(1) - lambda;
  if (std::abs(order.value()) < kGeometricBranchThreshold) {
    return pow(a, w0) * pow(b, lambda);
  }
  // Factor out the dominant argument so the powers stay in range:
  // the larger one for q > 0, the smaller one for q < 0.
  const Real pivot = q > 0 ? std::max(a, b) : std::min(a, b);
  const Real ra = a / pivot;
  const Real rb = b / pivot;
  if (std::abs(order.value()) < 1) {
    // Near q = 0 the direct form cancels; expm1/log1p keep full precision.
    using std::exp, std::expm1, std::log, std::log1p;
    const Real t = w0 * expm1(q * log(ra)) + lambda * expm1(q * log(rb));
    return pivot * exp(log1p(t) / q);
  }
  return pivot * pow(w0 * pow(ra, q) + lambda * pow(rb, q), Real(1) / q);
}

void check_holder_inputs(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DomainError("Hoelder sequences must be nonempty");
  if (a.size() != b.size()) throw DomainError("Hoelder sequences must have equal length");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] >= 0) || !(b[i] >= 0) || !std::isfinite(a[i]) || !std::isfinite(b[i])) {
      throw DomainError("Hoelder sequences must be finite and nonnegative");
    }
  }
}

}  // namespace

double q_mean(double a, double b, double lambda, MeanOrder q) {
  return mean_impl<double>(a, b, lambda, q);
}

long double q_mean_extended(long double a, long double b, long double lambda, MeanOrder q) {
  return mean_impl<long double>(a, b, lambda, q);
}

InequalitySides holder_combine(std::span<const double> a, std::span<const double> b) {
  check_holder_inputs(a, b);
  const double q = static_cast<double>(a.size());
  double prod_a = 1.0;
  double prod_b = 1.0;
  double prod_sum = 1.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    prod_a *= a[j];
    prod_b *= b[j];
    prod_sum *= std::pow(a[j], q) + std::pow(b[j], q);
  }
  return {std::abs(prod_a) + std::abs(prod_b), std::pow(prod_sum, 1.0 / q)};
}

InequalitySides holder_mean_combine(std::span<const double> f_vals,
                                    std::span<const double> g_vals,
                                    double lambda,
                                    const ConcavityIndex& s) {
  check_holder_inputs(f_vals, g_vals);
  if (!(lambda > 0 && lambda < 1)) throw DomainError("weight must lie in (0,1)");
  if (!s.is_rational()) throw DomainError("Hoelder mean form needs a rational s = p/q");
  if (static_cast<std::int64_t>(f_vals.size()) != s.denominator()) {
    throw DomainError("sequence length must equal the denominator q of s = p/q (got " +
                      std::to_string(f_vals.size()) + ", q = " +
                      std::to_string(s.denominator()) + ")");
  }
  const double inv_p = 1.0 / static_cast<double>(s.numerator());
  const double inv_q = 1.0 / static_cast<double>(s.denominator());
  const double inv_s = s.inverse();

  double prod_f = 1.0;
  double prod_g = 1.0;
  double rhs = 1.0;
  for (std::size_t j = 0; j < f_vals.size(); ++j) {
    prod_f *= std::pow(f_vals[j], inv_p);
    prod_g *= std::pow(g_vals[j], inv_p);
    rhs *= std::pow((1.0 - lambda) * std::pow(f_vals[j], inv_s) +
                        lambda * std::pow(g_vals[j], inv_s),
                    inv_q);
  }
  return {(1.0 - lambda) * prod_f + lambda * prod_g, rhs};
}

}  // namespace bblab
