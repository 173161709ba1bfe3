#include "cantor/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cantor {

namespace {

constexpr double kSumTolerance = 1e-12;

// Uniform double in [0,1) from the top 53 bits of one draw.
double unit_draw(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

}  // namespace

LevelDistribution LevelDistribution::uniform(IntervalUnion support) {
  if (support.empty()) throw Error("level distribution: empty support");
  LevelDistribution d;
  d.uniform_ = true;
  d.support_ = std::move(support);
  return d;
}

LevelDistribution LevelDistribution::explicit_probabilities(std::vector<Rational> probabilities) {
  if (probabilities.empty()) throw Error("level distribution: empty probability vector");
  Rational total = 0;
  for (const auto& p : probabilities) {
    if (p < 0) throw Error("level distribution: negative probability");
    total += p;
  }
  if (std::abs(total.get_d() - 1.0) > kSumTolerance)
    throw Error("level distribution: probabilities sum to " + format15(total.get_d()));
  while (probabilities.back() == 0) probabilities.pop_back();
  LevelDistribution d;
  d.uniform_ = false;
  d.probs_ = std::move(probabilities);
  return d;
}

Rational LevelDistribution::probability(const Integer& digit) const {
  if (uniform_) return support_.contains(digit) ? Rational(1, support_.cardinality()) : Rational(0);
  if (digit < 0 || digit >= static_cast<long>(probs_.size())) return 0;
  return probs_[digit.get_ui()];
}

double LevelDistribution::log_probability(const Integer& digit) const {
  if (uniform_) return support_.contains(digit) ? -log_of(support_.cardinality()) : kNegInf;
  const Rational p = probability(digit);
  return p > 0 ? log_of(p) : kNegInf;
}

Rational LevelDistribution::mass_below(const Integer& digit) const {
  if (uniform_) {
    Rational r(support_.count_below(digit), support_.cardinality());
    r.canonicalize();
    return r;
  }
  Rational total = 0;
  for (std::size_t i = 0; i < probs_.size() && Integer(i) < digit; ++i) total += probs_[i];
  return total;
}

Rational LevelDistribution::max_probability() const {
  if (uniform_) return Rational(1, support_.cardinality());
  return *std::max_element(probs_.begin(), probs_.end());
}

Integer LevelDistribution::mode() const {
  if (uniform_) return support_.min();
  return Integer(std::max_element(probs_.begin(), probs_.end()) - probs_.begin());
}

double LevelDistribution::entropy() const {
  if (uniform_) return log_of(support_.cardinality());
  CompensatedSum h;
  for (const auto& p : probs_)
    if (p > 0) h.add(-p.get_d() * log_of(p));
  return h.value();
}

IntervalUnion LevelDistribution::support() const {
  if (uniform_) return support_;
  std::vector<IntervalUnion::Range> ranges;
  for (std::size_t i = 0; i < probs_.size(); ++i)
    if (probs_[i] > 0) ranges.emplace_back(Integer(i), Integer(i));
  return IntervalUnion(std::move(ranges));
}

Integer LevelDistribution::extent() const {
  return uniform_ ? Integer(support_.max() + 1) : Integer(probs_.size());
}

bool LevelDistribution::exact() const {
  if (uniform_) return true;
  Rational total = 0;
  for (const auto& p : probs_) total += p;
  return total == 1;
}

Integer LevelDistribution::draw(std::mt19937_64& gen) const {
  if (uniform_) return support_.nth(uniform_below(support_.cardinality(), gen));
  const double u = unit_draw(gen);
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (probs_[i] == 0) continue;
    last_positive = i;
    cumulative += probs_[i].get_d();
    if (u < cumulative) return Integer(i);
  }
  return Integer(last_positive);
}

Integer uniform_below(const Integer& bound, std::mt19937_64& gen) {
  if (bound < 1) throw Error("uniform_below: bound must be positive");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  const std::size_t excess = words * 64 - bits;
  for (;;) {
    Integer candidate = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t chunk = gen();
      if (w == 0) chunk >>= excess;
      candidate <<= 64;
      candidate += Integer(static_cast<unsigned long>(chunk));
    }
    if (candidate < bound) return candidate;
  }
}

ProductMeasure::ProductMeasure(BaseSequence bases, std::vector<LevelDistribution> levels)
    : bases_(std::move(bases)), levels_(std::move(levels)) {
  if (levels_.empty()) throw Error("product measure: no levels");
  bases_.check_level(depth());
  for (int k = 1; k <= depth(); ++k) {
    if (levels_[static_cast<std::size_t>(k - 1)].extent() > bases_.base(k))
      throw Error("product measure: level " + std::to_string(k) + " puts mass past n_k - 1");
  }
}

const LevelDistribution& ProductMeasure::level(int k) const {
  if (k < 1 || k > depth())
    throw Error("product measure: level " + std::to_string(k) + " beyond horizon");
  return levels_[static_cast<std::size_t>(k - 1)];
}

bool ProductMeasure::exact() const {
  return std::all_of(levels_.begin(), levels_.end(), [](const auto& l) { return l.exact(); });
}

ProductMeasure uniform_on(const DigitRuleSet& set) {
  std::vector<LevelDistribution> levels;
  for (const auto& v : set.levels()) levels.push_back(LevelDistribution::uniform(v));
  return ProductMeasure(set.bases(), std::move(levels));
}

ProductMeasure uniform_full(const BaseSequence& bases, int depth) {
  return uniform_on(full_set(bases, depth));
}

ProductMeasure degenerate(const BaseSequence& bases, int depth) {
  std::vector<LevelDistribution> levels(static_cast<std::size_t>(depth),
                                        LevelDistribution::uniform(IntervalUnion::range(0, 0)));
  return ProductMeasure(bases, std::move(levels));
}

ProductMeasure t_measure(const BaseSequence& bases, const std::vector<int>& special, int depth) {
  SubsequenceSelection sel;
  sel.depth = depth;
  sel.kj = special;
  std::sort(sel.kj.begin(), sel.kj.end());
  return uniform_on(construct_T(bases, sel));
}

DigitRuleSet example2_split_set(int m, long j, int depth) {
  const long k = 1L << m;
  if (m < 0 || m > 30 || k > depth) throw Error("example2 split: need 2^m <= depth");
  const Integer block = pow_int(2, static_cast<unsigned long>(k));
  if (j < 0 || j >= k) throw Error("example2 split: j must lie in 0..2^m-1");
  const auto t = construct_example2(depth);
  auto levels = t.levels();
  levels[static_cast<std::size_t>(k - 1)] =
      IntervalUnion::range(block * j, block * (j + 1) - 1);
  RuleOrigin origin{"explicit"};
  return DigitRuleSet(t.bases(), std::move(levels), t.special_levels(), origin);
}

ProductMeasure example2_split_measure(int m, long j, int depth) {
  return uniform_on(example2_split_set(m, j, depth));
}

double cylinder_log_measure(const ProductMeasure& measure, const DigitWord& word) {
  if (!(word.bases() == measure.bases())) throw Error("cylinder_log_measure: base mismatch");
  CompensatedSum acc;
  for (int i = 1; i <= word.rank(); ++i) {
    const double lp = measure.level(i).log_probability(word.digits()[static_cast<std::size_t>(i - 1)]);
    if (lp == kNegInf) return kNegInf;
    acc.add(lp);
  }
  return acc.value();
}

Rational cylinder_measure(const ProductMeasure& measure, const DigitWord& word) {
  Rational mu = 1;
  for (int i = 1; i <= word.rank(); ++i)
    mu *= measure.level(i).probability(word.digits()[static_cast<std::size_t>(i - 1)]);
  return mu;
}

std::vector<double> entropy_sequence(const ProductMeasure& measure, int depth) {
  if (depth < 1 || depth > measure.depth()) throw Error("entropy_sequence: depth out of range");
  std::vector<double> out;
  CompensatedSum acc;
  for (int k = 1; k <= depth; ++k) {
    acc.add(measure.level(k).entropy());
    out.push_back(acc.value());
  }
  return out;
}

EntropyDimensionReport entropy_dimension(const ProductMeasure& measure, int depth) {
  if (depth < 2) throw Error("entropy_dimension: depth must be at least 2");
  EntropyDimensionReport r;
  const auto H = entropy_sequence(measure, depth);
  CompensatedSum log_len;
  for (int k = 1; k <= depth; ++k) {
    log_len.add(measure.bases().log_base(k));
    r.values.push_back(H[static_cast<std::size_t>(k - 1)] / log_len.value());
  }
  r.tail_window = std::min(default_tail_window(depth), depth);
  const auto first = r.values.end() - r.tail_window;
  r.liminf_estimate = *std::min_element(first, r.values.end());
  r.limsup_estimate = *std::max_element(first, r.values.end());

  r.condition7_partials = square_summability_partials(measure.bases(), depth);
  std::vector<double> terms(r.condition7_partials.size());
  for (std::size_t i = 0; i < terms.size(); ++i)
    terms[i] = r.condition7_partials[i] - (i ? r.condition7_partials[i - 1] : 0.0);
  r.condition7_trend =
      series_trend(terms, 1, default_tail_window(depth), &r.condition7_decay_exponent);
  return r;
}

CdfBracket cdf(const ProductMeasure& measure, const Rational& x, int depth) {
  if (x < 0 || x > 1) throw Error("cdf: x must lie in [0,1]");
  if (x == 1) return {Rational(1), Rational(1)};
  const auto word = encode(x, measure.bases(), depth);
  Rational lower = 0, prefix = 1;
  for (int i = 1; i <= depth; ++i) {
    const auto& level = measure.level(i);
    const Integer& digit = word.digits()[static_cast<std::size_t>(i - 1)];
    lower += prefix * level.mass_below(digit);
    prefix *= level.probability(digit);
    if (prefix == 0) break;
  }
  lower.canonicalize();
  return {lower, lower + prefix};
}

DigitWord sample(const ProductMeasure& measure, std::mt19937_64& gen, int depth) {
  if (depth < 0 || depth > measure.depth()) throw Error("sample: depth beyond horizon");
  std::vector<Integer> digits;
  digits.reserve(static_cast<std::size_t>(depth));
  for (int k = 1; k <= depth; ++k) digits.push_back(measure.level(k).draw(gen));
  return DigitWord(measure.bases(), std::move(digits));
}

DigitWord sample(const ProductMeasure& measure, std::uint64_t seed, int depth) {
  std::mt19937_64 gen(seed);
  return sample(measure, gen, depth);
}

}  // namespace cantor
