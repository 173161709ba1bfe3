#pragma once

// Cantor series expansions: base sequences, digit words and their cylinders.
//
// A base sequence n_1, n_2, ... (every n_k >= 2) expands x in [0,1) as
//
//     x = sum_k a_k / (n_1 n_2 ... n_k),   a_k in {0, ..., n_k - 1}.
//
// The rank-k cylinder named by a_1..a_k is the half-open interval
// [left, left + 1/(n_1...n_k)). Children of a cylinder partition it exactly.

#include <cstdint>
#include <vector>

#include "cantor/numeric.hpp"

namespace cantor {

class BaseSequence {
 public:
  enum class Kind { Explicit, Constant, Power, DoubleExponential };

  static BaseSequence explicit_values(std::vector<Integer> values);
  static BaseSequence constant(const Integer& value, int max_depth);
  /// n_k = base^k
  static BaseSequence power(const Integer& base, int max_depth);
  /// n_k = base^(2^k)
  static BaseSequence double_exponential(const Integer& base, int max_depth);

  Kind kind() const { return kind_; }
  int max_depth() const { return max_depth_; }
  /// Rule parameter (the constant, or the base of power / double-exponential rules).
  const Integer& parameter() const { return parameter_; }
  const std::vector<Integer>& explicit_list() const { return values_; }

  /// n_k, exact. Throws past max_depth or when the value is too large to materialize.
  Integer base(int k) const;
  /// ln n_k, in closed form for the rule-based kinds.
  double log_base(int k) const;
  /// ln(n_1 ... n_k) by compensated summation in index order; 0 for k = 0.
  double log_product(int k) const;
  /// n_1 ... n_k, exact.
  Integer product(int k) const;

  void check_level(int k) const;

  friend bool operator==(const BaseSequence&, const BaseSequence&) = default;

 private:
  BaseSequence(Kind kind, Integer parameter, std::vector<Integer> values, int max_depth);

  Kind kind_ = Kind::Constant;
  Integer parameter_;
  std::vector<Integer> values_;
  int max_depth_ = 0;
};

const char* to_string(BaseSequence::Kind kind);

/// A finite digit prefix (a_1, ..., a_k) valid against its base sequence.
class DigitWord {
 public:
  explicit DigitWord(BaseSequence bases, std::vector<Integer> digits = {});

  const BaseSequence& bases() const { return bases_; }
  const std::vector<Integer>& digits() const { return digits_; }
  int rank() const { return static_cast<int>(digits_.size()); }

  DigitWord extended(const Integer& digit) const;
  DigitWord prefix(int rank) const;

  friend bool operator==(const DigitWord&, const DigitWord&) = default;

 private:
  BaseSequence bases_;
  std::vector<Integer> digits_;
};

struct Cylinder {
  DigitWord word;
  Rational left;
  Rational length;
  double log_length = 0.0;  // -sum ln n_i

  Rational right() const { return left + length; }
  bool contains(const Rational& x) const { return left <= x && x < right(); }
  bool contains(const Cylinder& other) const {
    return left <= other.left && other.right() <= right();
  }
};

Integer generate_base(const BaseSequence& bases, int k);

/// Greedy digits of x in [0,1): a_k = floor(f_k n_k), f_{k+1} = f_k n_k - a_k.
DigitWord encode(const Rational& x, const BaseSequence& bases, int depth);

/// Left endpoint of the word's cylinder.
Rational decode(const DigitWord& word);

Cylinder cylinder_of(const DigitWord& word);

/// The rank-k cylinder whose left endpoint is index / (n_1 ... n_k).
DigitWord word_from_index(const Integer& index, const BaseSequence& bases, int k);

}  // namespace cantor
