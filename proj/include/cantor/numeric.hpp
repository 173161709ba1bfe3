#pragma once

// Exact integers/rationals and the log-space helpers shared by every module.

#include <gmpxx.h>

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cantor {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown for violated preconditions and malformed inputs throughout the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Natural log of a positive big integer, accurate to double precision for any size.
double log_of(const Integer& n);

/// ln(p/q) for a positive rational, without converting the quotient to double.
double log_of(const Rational& r);

/// Neumaier-compensated accumulator; results depend only on the order of add() calls.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double start) : sum_(start) {}

  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// log(sum exp(v_i)); -inf for an empty range or all -inf entries.
double log_sum_exp(std::span<const double> values);

/// Exact b^e for small nonnegative exponents.
Integer pow_int(const Integer& b, unsigned long e);

/// floor(n^(p/q)) computed exactly as the integer q-th root of n^p.
Integer floor_rational_power(const Integer& n, unsigned long p, unsigned long q);

/// Rational from "a", "a/b" or a decimal literal such as "0.125".
Rational parse_rational(const std::string& text);

/// Integer from a decimal string.
Integer parse_integer(const std::string& text);

/// Round to 15 significant digits so emitted numbers are stable and compact.
double round15(double x);

/// "%.15g" rendering; "inf"/"-inf"/"nan" spelled out.
std::string format15(double x);

}  // namespace cantor
