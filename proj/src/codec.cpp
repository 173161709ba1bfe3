#include "cantor/codec.hpp"

#include <string>
#include <utility>

namespace cantor {

namespace {

// Largest n_k (in bits) we are willing to materialize exactly.
constexpr unsigned long kMaxMaterializedBits = 1ul << 26;

}  // namespace

BaseSequence::BaseSequence(Kind kind, Integer parameter, std::vector<Integer> values,
                           int max_depth)
    : kind_(kind), parameter_(std::move(parameter)), values_(std::move(values)),
      max_depth_(max_depth) {
  if (max_depth_ < 1) throw Error("base sequence: max_depth must be positive");
}

BaseSequence BaseSequence::explicit_values(std::vector<Integer> values) {
  if (values.empty()) throw Error("base sequence: explicit list is empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 2)
      throw Error("base sequence: n_" + std::to_string(i + 1) + " = " + values[i].get_str() +
                  " is below 2");
  }
  const int depth = static_cast<int>(values.size());
  return BaseSequence(Kind::Explicit, Integer(0), std::move(values), depth);
}

BaseSequence BaseSequence::constant(const Integer& value, int max_depth) {
  if (value < 2) throw Error("base sequence: constant rule needs a value >= 2");
  return BaseSequence(Kind::Constant, value, {}, max_depth);
}

BaseSequence BaseSequence::power(const Integer& base, int max_depth) {
  if (base < 2) throw Error("base sequence: power rule needs a base >= 2");
  return BaseSequence(Kind::Power, base, {}, max_depth);
}

BaseSequence BaseSequence::double_exponential(const Integer& base, int max_depth) {
  if (base < 2) throw Error("base sequence: double-exponential rule needs a base >= 2");
  if (max_depth > 1000) throw Error("base sequence: double-exponential depth is capped at 1000");
  return BaseSequence(Kind::DoubleExponential, base, {}, max_depth);
}

void BaseSequence::check_level(int k) const {
  if (k < 1) throw Error("base sequence: levels start at 1, got " + std::to_string(k));
  if (k > max_depth_)
    throw Error("base sequence: level " + std::to_string(k) + " exceeds max_depth " +
                std::to_string(max_depth_));
}

Integer BaseSequence::base(int k) const {
  check_level(k);
  switch (kind_) {
    case Kind::Explicit:
      return values_[static_cast<std::size_t>(k - 1)];
    case Kind::Constant:
      return parameter_;
    case Kind::Power:
      return pow_int(parameter_, static_cast<unsigned long>(k));
    case Kind::DoubleExponential: {
      const unsigned long bits = mpz_sizeinbase(parameter_.get_mpz_t(), 2);
      if (k >= 40 || (bits << k) > kMaxMaterializedBits)
        throw Error("base sequence: n_" + std::to_string(k) + " is too large to materialize");
      return pow_int(parameter_, 1ul << k);
    }
  }
  throw Error("base sequence: unknown kind");
}

double BaseSequence::log_base(int k) const {
  check_level(k);
  switch (kind_) {
    case Kind::Explicit:
      return log_of(values_[static_cast<std::size_t>(k - 1)]);
    case Kind::Constant:
      return log_of(parameter_);
    case Kind::Power:
      return static_cast<double>(k) * log_of(parameter_);
    case Kind::DoubleExponential:
      return std::ldexp(log_of(parameter_), k);
  }
  throw Error("base sequence: unknown kind");
}

double BaseSequence::log_product(int k) const {
  if (k == 0) return 0.0;
  check_level(k);
  CompensatedSum acc;
  for (int i = 1; i <= k; ++i) acc.add(log_base(i));
  return acc.value();
}

Integer BaseSequence::product(int k) const {
  Integer out = 1;
  for (int i = 1; i <= k; ++i) out *= base(i);
  return out;
}

const char* to_string(BaseSequence::Kind kind) {
  switch (kind) {
    case BaseSequence::Kind::Explicit: return "explicit";
    case BaseSequence::Kind::Constant: return "constant";
    case BaseSequence::Kind::Power: return "power";
    case BaseSequence::Kind::DoubleExponential: return "double_exponential";
  }
  return "unknown";
}

DigitWord::DigitWord(BaseSequence bases, std::vector<Integer> digits)
    : bases_(std::move(bases)), digits_(std::move(digits)) {
  if (digits_.empty()) return;
  bases_.check_level(rank());
  for (int i = 1; i <= rank(); ++i) {
    const Integer& d = digits_[static_cast<std::size_t>(i - 1)];
    if (d < 0 || d >= bases_.base(i))
      throw Error("digit word: a_" + std::to_string(i) + " = " + d.get_str() +
                  " is outside 0..n_" + std::to_string(i) + "-1");
  }
}

DigitWord DigitWord::extended(const Integer& digit) const {
  auto next = digits_;
  next.push_back(digit);
  return DigitWord(bases_, std::move(next));
}

DigitWord DigitWord::prefix(int r) const {
  if (r < 0 || r > rank()) throw Error("digit word: prefix rank out of range");
  return DigitWord(bases_, std::vector<Integer>(digits_.begin(), digits_.begin() + r));
}

Integer generate_base(const BaseSequence& bases, int k) { return bases.base(k); }

DigitWord encode(const Rational& x, const BaseSequence& bases, int depth) {
  if (x < 0 || x >= 1) throw Error("encode: x must lie in [0,1), got " + x.get_str());
  if (depth < 0) throw Error("encode: negative depth");
  if (depth > 0) bases.check_level(depth);
  std::vector<Integer> digits;
  digits.reserve(static_cast<std::size_t>(depth));
  Rational frac = x;
  for (int k = 1; k <= depth; ++k) {
    const Rational scaled = frac * bases.base(k);
    Integer digit;
    mpz_fdiv_q(digit.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    frac = scaled - digit;
    digits.push_back(std::move(digit));
  }
  return DigitWord(bases, std::move(digits));
}

Rational decode(const DigitWord& word) {
  Rational x = 0;
  Integer denom = 1;
  for (int k = 1; k <= word.rank(); ++k) {
    denom *= word.bases().base(k);
    x += Rational(word.digits()[static_cast<std::size_t>(k - 1)], denom);
  }
  x.canonicalize();
  return x;
}

Cylinder cylinder_of(const DigitWord& word) {
  Cylinder c{word, 0, 1, 0.0};
  Integer denom = 1;
  CompensatedSum log_len;
  for (int k = 1; k <= word.rank(); ++k) {
    denom *= word.bases().base(k);
    c.left += Rational(word.digits()[static_cast<std::size_t>(k - 1)], denom);
    log_len.add(-word.bases().log_base(k));
  }
  c.left.canonicalize();
  c.length = Rational(Integer(1), denom);
  c.log_length = log_len.value();
  return c;
}

DigitWord word_from_index(const Integer& index, const BaseSequence& bases, int k) {
  if (index < 0) throw Error("word_from_index: negative index");
  std::vector<Integer> digits(static_cast<std::size_t>(k));
  Integer rest = index;
  for (int i = k; i >= 1; --i) {
    const Integer n = bases.base(i);
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rest.get_mpz_t(), n.get_mpz_t());
    digits[static_cast<std::size_t>(i - 1)] = r;
    rest = q;
  }
  if (rest != 0) throw Error("word_from_index: index exceeds the rank-k cylinder count");
  return DigitWord(bases, std::move(digits));
}

}  // namespace cantor
