#pragma once

#include <limits>
#include <span>

namespace bblab {

class ConcavityIndex;

/// Order q of a weighted power mean; a finite real or one of +/-infinity.
class MeanOrder {
 public:
  explicit MeanOrder(double q);

  static MeanOrder plus_infinity() { return MeanOrder(std::numeric_limits<double>::infinity()); }
  static MeanOrder minus_infinity() { return MeanOrder(-std::numeric_limits<double>::infinity()); }

  double value() const { return q_; }
  bool is_plus_infinity() const;
  bool is_minus_infinity() const;

 private:
  double q_;
};

/// Orders with |q| below this evaluate through the geometric-mean branch.
inline constexpr double kGeometricBranchThreshold = 1e-12;

/// Weighted q-mean M_q(a, b; lambda).
///
/// Vanishes whenever a*b == 0, whatever q is; otherwise max/min for q = +/-inf,
/// a^(1-lambda) b^lambda for q = 0 and ((1-lambda) a^q + lambda b^q)^(1/q).
/// Throws DomainError for negative arguments or lambda outside (0,1).
double q_mean(double a, double b, double lambda, MeanOrder q);

/// Same mean evaluated in extended (long double) precision; used as a
/// reference path by oracle comparisons.
long double q_mean_extended(long double a, long double b, long double lambda, MeanOrder q);

struct InequalitySides {
  double lhs = 0.0;
  double rhs = 0.0;

  double slack() const { return rhs - lhs; }
};

/// Both sides of the product Hoelder inequality for two sequences of the same
/// length q:  |prod a| + |prod b|  <=  (prod (a_j^q + b_j^q))^(1/q).
InequalitySides holder_combine(std::span<const double> a, std::span<const double> b);

/// Both sides of the weighted mean form used to lift rational concavity
/// exponents s = p/q (sequence length must equal q):
///   (1-l) prod f_j^(1/p) + l prod g_j^(1/p)
///     <= prod ((1-l) f_j^(1/s) + l g_j^(1/s))^(1/q).
InequalitySides holder_mean_combine(std::span<const double> f_vals,
                                    std::span<const double> g_vals,
                                    double lambda,
                                    const ConcavityIndex& s);

}  // namespace bblab
