#include "bblab/rational.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <numeric>

#include "bblab/errors.hpp"

namespace bblab {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view what) {
  std::int64_t out = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) {
    throw DomainError("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return out;
}

double parse_double(std::string_view text, std::string_view what) {
  // std::from_chars for double is unavailable on older libstdc++.
  std::string copy(text);
  char* end = nullptr;
  const double v = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size()) {
    throw DomainError("cannot parse " + std::string(what) + " from '" + copy + "'");
  }
  return v;
}

}  // namespace

RationalWeight::RationalWeight(std::int64_t num, std::int64_t den) {
  if (num <= 0 || den <= 0 || num >= den) {
    throw DomainError("weight j/k needs 0 < j < k (got " + std::to_string(num) + "/" +
                      std::to_string(den) + ")");
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

RationalWeight RationalWeight::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    throw DomainError("weight must be given as a rational 'j/k' (got '" + std::string(text) +
                      "')");
  }
  return RationalWeight(parse_int(text.substr(0, slash), "weight numerator"),
                        parse_int(text.substr(slash + 1), "weight denominator"));
}

double RationalWeight::tau() const { return std::min(value(), complement()); }

std::string RationalWeight::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

ConcavityIndex::ConcavityIndex(double s) : s_(s), kind_(Kind::irrational), p_(0), q_(0) {
  if (!(s > 0) || !std::isfinite(s)) throw DomainError("concavity index s must be positive");
  if (s == std::floor(s) && s < 1e15) {
    kind_ = Kind::integer;
    p_ = static_cast<std::int64_t>(s);
    q_ = 1;
    return;
  }
  for (std::int64_t q = 2; q <= kMaxClassifiedDenominator; ++q) {
    const double p = std::round(s * static_cast<double>(q));
    if (p >= 1 && std::abs(p / static_cast<double>(q) - s) <= 1e-12 * s) {
      *this = rational(static_cast<std::int64_t>(p), q);
      return;
    }
  }
}

ConcavityIndex ConcavityIndex::rational(std::int64_t p, std::int64_t q) {
  if (p <= 0 || q <= 0) throw DomainError("rational concavity index needs p, q > 0");
  const std::int64_t g = std::gcd(p, q);
  p /= g;
  q /= g;
  const double s = static_cast<double>(p) / static_cast<double>(q);
  return ConcavityIndex(s, q == 1 ? Kind::integer : Kind::rational, p, q);
}

ConcavityIndex ConcavityIndex::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    return rational(parse_int(text.substr(0, slash), "s numerator"),
                    parse_int(text.substr(slash + 1), "s denominator"));
  }
  return ConcavityIndex(parse_double(text, "s"));
}

std::int64_t ConcavityIndex::integer_part() const {
  return static_cast<std::int64_t>(std::floor(s_));
}

std::string ConcavityIndex::to_string() const {
  switch (kind_) {
    case Kind::integer:
      return std::to_string(p_);
    case Kind::rational:
      return std::to_string(p_) + "/" + std::to_string(q_);
    case Kind::irrational:
      break;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", s_);
  return buf;
}

const char* to_string(ConcavityIndex::Kind kind) {
  switch (kind) {
    case ConcavityIndex::Kind::integer:
      return "integer";
    case ConcavityIndex::Kind::rational:
      return "rational";
    case ConcavityIndex::Kind::irrational:
      return "irrational";
  }
  return "unknown";
}

}  // namespace bblab
