#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace bblab {

/// Rational weight lambda = j/k in (0,1), kept in lowest terms so that every
/// (1-lambda) x + lambda y of two lattice points lands on the k-refined lattice.
class RationalWeight {
 public:
  RationalWeight(std::int64_t num, std::int64_t den);

  /// Parses "j/k". Decimal strings are rejected.
  static RationalWeight parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  /// k - j, the integer coefficient of the first argument on the refined lattice.
  std::int64_t complement_num() const { return den_ - num_; }

  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  double complement() const { return static_cast<double>(den_ - num_) / static_cast<double>(den_); }
  double tau() const;

  std::string to_string() const;

  friend bool operator==(const RationalWeight&, const RationalWeight&) = default;

 private:
  std::int64_t num_;
  std::int64_t den_;
};

/// Concavity index s > 0 of the 1/s-concavity regime.
///
/// Rational values carry s = p/q in lowest terms. Values built from a double are
/// classified as rational when a denominator up to kMaxClassifiedDenominator
/// reproduces them to 1e-12 relative; anything else is treated as irrational.
class ConcavityIndex {
 public:
  enum class Kind { integer, rational, irrational };

  static constexpr std::int64_t kMaxClassifiedDenominator = 64;

  explicit ConcavityIndex(double s);
  static ConcavityIndex rational(std::int64_t p, std::int64_t q);
  /// Accepts "p/q", integers and decimals.
  static ConcavityIndex parse(std::string_view text);

  double value() const { return s_; }
  Kind kind() const { return kind_; }
  bool is_integer() const { return kind_ == Kind::integer; }
  bool is_rational() const { return kind_ != Kind::irrational; }

  /// p of s = p/q (s itself when integer). Only meaningful when is_rational().
  std::int64_t numerator() const { return p_; }
  /// q of s = p/q (1 when integer). Only meaningful when is_rational().
  std::int64_t denominator() const { return q_; }

  double inverse() const { return 1.0 / s_; }
  /// 1/(n+s), the exponent of the integral mean in dimension n.
  double dimension_exponent(int n) const { return 1.0 / (static_cast<double>(n) + s_); }
  /// [s], the largest integer not greater than s.
  std::int64_t integer_part() const;

  std::string to_string() const;

 private:
  ConcavityIndex(double s, Kind kind, std::int64_t p, std::int64_t q)
      : s_(s), kind_(kind), p_(p), q_(q) {}

  double s_;
  Kind kind_;
  std::int64_t p_;
  std::int64_t q_;
};

const char* to_string(ConcavityIndex::Kind kind);

}  // namespace bblab
