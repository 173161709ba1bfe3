#pragma once

// Product measures on [0,1): the law of xi = sum_k xi_k / (n_1 ... n_k) with
// independent digits xi_k distributed by a per-level probability vector.

#include <cstdint>
#include <random>
#include <vector>

#include "cantor/codec.hpp"
#include "cantor/faithfulness.hpp"
#include "cantor/sets.hpp"

namespace cantor {

/// Distribution of one digit: uniform over a digit set, or an explicit vector
/// (p_0, p_1, ...), entries past the end being zero.
class LevelDistribution {
 public:
  static LevelDistribution uniform(IntervalUnion support);
  static LevelDistribution explicit_probabilities(std::vector<Rational> probabilities);

  bool is_uniform() const { return uniform_; }
  const IntervalUnion& uniform_support() const { return support_; }
  const std::vector<Rational>& probabilities() const { return probs_; }

  Rational probability(const Integer& digit) const;
  double log_probability(const Integer& digit) const;
  /// P(digit < d)
  Rational mass_below(const Integer& digit) const;
  Rational max_probability() const;
  /// Digit attaining max_probability (smallest such).
  Integer mode() const;
  /// -sum p ln p
  double entropy() const;
  IntervalUnion support() const;
  /// One past the largest digit with positive probability.
  Integer extent() const;
  /// Probabilities sum to exactly 1.
  bool exact() const;

  Integer draw(std::mt19937_64& gen) const;

  friend bool operator==(const LevelDistribution&, const LevelDistribution&) = default;

 private:
  bool uniform_ = true;
  IntervalUnion support_;
  std::vector<Rational> probs_;
};

class ProductMeasure {
 public:
  ProductMeasure(BaseSequence bases, std::vector<LevelDistribution> levels);

  const BaseSequence& bases() const { return bases_; }
  int depth() const { return static_cast<int>(levels_.size()); }
  const std::vector<LevelDistribution>& levels() const { return levels_; }
  const LevelDistribution& level(int k) const;
  bool exact() const;

 private:
  BaseSequence bases_;
  std::vector<LevelDistribution> levels_;
};

/// Uniform on the allowed digits of every level of `set`.
ProductMeasure uniform_on(const DigitRuleSet& set);
/// Uniform on all digits: agrees with Lebesgue measure on cylinders.
ProductMeasure uniform_full(const BaseSequence& bases, int depth);
/// Point mass on digit 0 at every level.
ProductMeasure degenerate(const BaseSequence& bases, int depth);
/// The measure of the non-faithfulness construction: uniform on {0..floor(sqrt n_k)}
/// at the given levels, uniform on all digits elsewhere.
ProductMeasure t_measure(const BaseSequence& bases, const std::vector<int>& special, int depth);

/// mu^j for the example2 split: uniform on {j 2^k .. (j+1) 2^k - 1} at k = 2^m,
/// uniform on the set's digits at every other level.
ProductMeasure example2_split_measure(int m, long j, int depth);
/// The support of example2_split_measure(m, j, depth) as a digit-restricted set.
DigitRuleSet example2_split_set(int m, long j, int depth);

/// sum_{i<=k} ln p_{a_i,i}; -inf when a digit has probability zero.
double cylinder_log_measure(const ProductMeasure& measure, const DigitWord& word);
Rational cylinder_measure(const ProductMeasure& measure, const DigitWord& word);

/// (H_1, ..., H_K), H_k = sum_{j<=k} h_j with h_j the entropy of level j.
std::vector<double> entropy_sequence(const ProductMeasure& measure, int depth);

struct EntropyDimensionReport {
  std::vector<double> values;  // H_k / ln(n_1 ... n_k)
  int tail_window = 0;
  double liminf_estimate = 0.0;
  double limsup_estimate = 0.0;
  std::vector<double> condition7_partials;
  SeriesTrend condition7_trend = SeriesTrend::Convergent;
  double condition7_decay_exponent = 0.0;
};

EntropyDimensionReport entropy_dimension(const ProductMeasure& measure, int depth);

struct CdfBracket {
  Rational lower;  // mu of the cylinders left of x's rank-depth cylinder
  Rational upper;  // lower + mu of that cylinder
};

CdfBracket cdf(const ProductMeasure& measure, const Rational& x, int depth);

/// Digits drawn level by level from `gen`; same generator state, same word.
DigitWord sample(const ProductMeasure& measure, std::mt19937_64& gen, int depth);
DigitWord sample(const ProductMeasure& measure, std::uint64_t seed, int depth);

/// Uniform integer in [0, bound), by rejection on whole 64-bit draws.
Integer uniform_below(const Integer& bound, std::mt19937_64& gen);

}  // namespace cantor
