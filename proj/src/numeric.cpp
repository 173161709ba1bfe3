#include "cantor/numeric.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <numbers>

namespace cantor {

double log_of(const Integer& n) {
  if (sgn(n) <= 0) throw Error("log_of: argument must be positive");
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, n.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
}

double log_of(const Rational& r) {
  if (sgn(r) <= 0) throw Error("log_of: argument must be positive");
  return log_of(Integer(r.get_num())) - log_of(Integer(r.get_den()));
}

double log_sum_exp(std::span<const double> values) {
  double peak = kNegInf;
  for (double v : values) peak = std::max(peak, v);
  if (peak == kNegInf) return kNegInf;
  CompensatedSum acc;
  for (double v : values) acc.add(std::exp(v - peak));
  return peak + std::log(acc.value());
}

Integer pow_int(const Integer& b, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
  return out;
}

Integer floor_rational_power(const Integer& n, unsigned long p, unsigned long q) {
  if (q == 0) throw Error("floor_rational_power: zero denominator");
  if (sgn(n) < 0) throw Error("floor_rational_power: negative base");
  Integer out;
  const Integer np = pow_int(n, p);
  mpz_root(out.get_mpz_t(), np.get_mpz_t(), q);
  return out;
}

Integer parse_integer(const std::string& text) {
  Integer out;
  if (text.empty() || out.set_str(text, 10) != 0) throw Error("not an integer: '" + text + "'");
  return out;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw Error("empty rational literal");
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const Integer num = parse_integer(text.substr(0, slash));
    const Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw Error("zero denominator in '" + text + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (const auto dot = text.find('.'); dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const auto scale = text.size() - dot - 1;
    if (digits == "-" || digits.empty()) throw Error("not a rational: '" + text + "'");
    Rational r(parse_integer(digits), pow_int(Integer(10), scale));
    r.canonicalize();
    return r;
  }
  return Rational(parse_integer(text));
}

double round15(double x) {
  if (!std::isfinite(x)) return x;
  if (x == 0.0) return 0.0;  // drop the sign of zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

std::string format15(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

}  // namespace cantor
