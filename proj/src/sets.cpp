#include "cantor/sets.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "cantor/faithfulness.hpp"

namespace cantor {

IntervalUnion::IntervalUnion(std::vector<Range> ranges) {
  for (const auto& [first, last] : ranges) {
    if (first < 0 || last < first) throw Error("interval union: malformed range");
  }
  std::sort(ranges.begin(), ranges.end(),
            [](const Range& x, const Range& y) { return x.first < y.first; });
  for (auto& r : ranges) {
    if (!ranges_.empty() && r.first <= ranges_.back().second + 1) {
      if (r.second > ranges_.back().second) ranges_.back().second = r.second;
    } else {
      ranges_.push_back(std::move(r));
    }
  }
}

IntervalUnion IntervalUnion::range(const Integer& first, const Integer& last) {
  return IntervalUnion({{first, last}});
}

Integer IntervalUnion::cardinality() const {
  Integer total = 0;
  for (const auto& [first, last] : ranges_) total += last - first + 1;
  return total;
}

bool IntervalUnion::contains(const Integer& d) const {
  for (const auto& [first, last] : ranges_)
    if (first <= d && d <= last) return true;
  return false;
}

Integer IntervalUnion::count_below(const Integer& d) const {
  Integer total = 0;
  for (const auto& [first, last] : ranges_) {
    if (d <= first) break;
    total += (d <= last ? d : Integer(last + 1)) - first;
  }
  return total;
}

Integer IntervalUnion::nth(const Integer& i) const {
  Integer rest = i;
  for (const auto& [first, last] : ranges_) {
    const Integer size = last - first + 1;
    if (rest < size) return first + rest;
    rest -= size;
  }
  throw Error("interval union: index past the last member");
}

DigitRuleSet::DigitRuleSet(BaseSequence bases, std::vector<IntervalUnion> levels,
                           std::vector<int> special_levels, RuleOrigin origin)
    : bases_(std::move(bases)), levels_(std::move(levels)), special_(std::move(special_levels)),
      origin_(std::move(origin)) {
  if (levels_.empty()) throw Error("digit rule set: no levels");
  bases_.check_level(depth());
  for (int k = 1; k <= depth(); ++k) {
    const auto& v = levels_[static_cast<std::size_t>(k - 1)];
    if (v.empty()) throw Error("digit rule set: V_" + std::to_string(k) + " is empty");
    if (v.max() >= bases_.base(k))
      throw Error("digit rule set: V_" + std::to_string(k) + " exceeds 0..n_k-1");
  }
  std::sort(special_.begin(), special_.end());
}

const IntervalUnion& DigitRuleSet::allowed_digits(int k) const {
  if (k < 1 || k > depth())
    throw Error("digit rule set: level " + std::to_string(k) + " beyond horizon " +
                std::to_string(depth()));
  return levels_[static_cast<std::size_t>(k - 1)];
}

Integer DigitRuleSet::cylinder_count(int k) const {
  Integer total = 1;
  for (int i = 1; i <= k; ++i) total *= allowed_digits(i).cardinality();
  return total;
}

double DigitRuleSet::log_level_count(int k) const {
  return log_of(allowed_digits(k).cardinality());
}

double DigitRuleSet::log_cylinder_count(int k) const {
  CompensatedSum acc;
  for (int i = 1; i <= k; ++i) acc.add(log_level_count(i));
  return acc.value();
}

bool DigitRuleSet::admits(const DigitWord& word) const {
  if (!(word.bases() == bases_) || word.rank() > depth()) return false;
  for (int i = 1; i <= word.rank(); ++i)
    if (!allowed_digits(i).contains(word.digits()[static_cast<std::size_t>(i - 1)])) return false;
  return true;
}

IntervalUnion allowed_digits(const DigitRuleSet& set, int k) { return set.allowed_digits(k); }

DigitRuleSet full_set(const BaseSequence& bases, int depth) {
  std::vector<IntervalUnion> levels;
  for (int k = 1; k <= depth; ++k) levels.push_back(IntervalUnion::range(0, bases.base(k) - 1));
  return DigitRuleSet(bases, std::move(levels), {}, RuleOrigin{"full"});
}

bool is_power_of_two(long k) { return k > 0 && (k & (k - 1)) == 0; }

double gap_ratio(const BaseSequence& bases, int prev, int next) {
  CompensatedSum gap;
  for (int i = prev + 1; i <= next - 1; ++i) gap.add(bases.log_base(i));
  return gap.value() / bases.log_product(next - 1);
}

SubsequenceSelection select_subsequences(const BaseSequence& bases, double C, double delta,
                                         double epsilon, int depth) {
  if (!(C > 0) || !(delta > 0) || !(delta < C))
    throw Error("select_subsequences: need 0 < delta < C");
  if (!(epsilon > 0)) throw Error("select_subsequences: epsilon must be positive");
  if (depth < 4) throw Error("select_subsequences: depth must be at least 4");

  const auto ratios = ratio_sequence(bases, depth);  // ratios[k-2] = r_k
  auto r = [&](int k) { return ratios[static_cast<std::size_t>(k - 2)]; };

  SubsequenceSelection sel;
  sel.C = C;
  sel.delta = delta;
  sel.epsilon = epsilon;
  sel.depth = depth;
  sel.N0 = 1;
  for (int k = 2; k <= depth; ++k)
    if (r(k) > C + delta) sel.N0 = k;

  const double target = -std::log(epsilon);
  sel.N1 = 1;
  while (sel.N1 <= depth && !(bases.log_product(sel.N1) > target)) ++sel.N1;
  if (sel.N1 > depth) throw Error("select_subsequences: depth too small to reach epsilon");
  sel.N2 = std::max(sel.N0, sel.N1);

  for (int k = std::max(2, sel.N2 + 1); k <= depth; ++k)
    if (C - delta <= r(k) && r(k) <= C + delta) sel.ki.push_back(k);
  if (sel.ki.empty())
    throw Error("select_subsequences: no valid indices up to depth " + std::to_string(depth) +
                " for this (C, delta)");

  const double threshold = 1.0 - C / 4.0;
  for (int k : sel.ki) {
    if (sel.kj.empty() || gap_ratio(bases, sel.kj.back(), k) > threshold) sel.kj.push_back(k);
  }
  return sel;
}

std::string verify_selection(const BaseSequence& bases, const SubsequenceSelection& sel) {
  std::ostringstream problems;
  for (int k : sel.ki) {
    const double head = bases.log_product(k - 1);
    const double ln_nk = bases.log_base(k);
    if (k <= sel.N2) problems << "k=" << k << " not beyond N2; ";
    if (!((sel.C - sel.delta) * head <= ln_nk && ln_nk <= (sel.C + sel.delta) * head))
      problems << "k=" << k << " violates the two-sided power bound; ";
  }
  if (!std::includes(sel.ki.begin(), sel.ki.end(), sel.kj.begin(), sel.kj.end()))
    problems << "kj is not a subsequence of ki; ";
  for (std::size_t j = 1; j < sel.kj.size(); ++j) {
    if (!(gap_ratio(bases, sel.kj[j - 1], sel.kj[j]) > 1.0 - sel.C / 4.0))
      problems << "pair (" << sel.kj[j - 1] << "," << sel.kj[j] << ") fails the gap test; ";
  }
  if (sel.N2 != std::max(sel.N0, sel.N1)) problems << "N2 != max(N0, N1); ";
  return problems.str();
}

DigitRuleSet construct_T(const BaseSequence& bases, const SubsequenceSelection& selection) {
  std::vector<IntervalUnion> levels;
  for (int k = 1; k <= selection.depth; ++k) {
    const Integer n = bases.base(k);
    if (std::binary_search(selection.kj.begin(), selection.kj.end(), k)) {
      Integer root;
      mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
      levels.push_back(IntervalUnion::range(0, root));
    } else {
      levels.push_back(IntervalUnion::range(0, n - 1));
    }
  }
  return DigitRuleSet(bases, std::move(levels), selection.kj, RuleOrigin{"T"});
}

namespace {

std::vector<int> powers_of_two_upto(int depth) {
  std::vector<int> out;
  for (int k = 1; k <= depth; k *= 2) out.push_back(k);
  return out;
}

// Levels of a power(4) set: V_k = {0..w_k - 1}, widened by k at k = 2^s and
// clipped to the digit range.
DigitRuleSet power4_set(int depth, const std::function<Integer(int)>& width, RuleOrigin origin) {
  if (depth < 1) throw Error("construction: depth must be at least 1");
  const auto bases = BaseSequence::power(4, depth);
  std::vector<IntervalUnion> levels;
  for (int k = 1; k <= depth; ++k) {
    Integer count = width(k);
    if (is_power_of_two(k)) count *= k;
    const Integer n = bases.base(k);
    if (count > n) count = n;
    if (count < 1) count = 1;
    levels.push_back(IntervalUnion::range(0, count - 1));
  }
  return DigitRuleSet(bases, std::move(levels), powers_of_two_upto(depth), std::move(origin));
}

// floor(4^(k r)) for rational r in (0,1).
Integer floor_pow4(int k, const Rational& r) {
  Rational x = r * (2 * k);
  x.canonicalize();
  Integer whole;
  mpz_fdiv_q(whole.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  if (x.get_den() == 1) return pow_int(2, whole.get_ui());

  mpfr_t t;
  mpfr_init2(t, static_cast<mpfr_prec_t>(whole.get_ui() + 128));
  mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDN);
  mpfr_exp2(t, t, MPFR_RNDN);
  Integer out;
  mpfr_get_z(out.get_mpz_t(), t, MPFR_RNDD);
  mpfr_clear(t);
  return out;
}

}  // namespace

DigitRuleSet construct_example1(int depth) {
  if (depth < 1) throw Error("construct_example1: depth must be at least 1");
  const auto bases = BaseSequence::power(4, depth);
  std::vector<IntervalUnion> levels;
  for (int k = 1; k <= depth; ++k)
    levels.push_back(IntervalUnion::range(0, pow_int(2, static_cast<unsigned long>(k)) - 1));
  return DigitRuleSet(bases, std::move(levels), {}, RuleOrigin{"example1"});
}

DigitRuleSet construct_example2(int depth) {
  return power4_set(
      depth, [](int k) { return pow_int(2, static_cast<unsigned long>(k)); },
      RuleOrigin{"example2"});
}

DigitRuleSet construct_T_alpha(long p, long q, int depth) {
  if (!(0 < p && p < q)) throw Error("construct_T_alpha: need 0 < p/q < 1");
  const auto bases = BaseSequence::power(4, depth);
  return power4_set(
      depth,
      [&](int k) {
        return floor_rational_power(bases.base(k), static_cast<unsigned long>(p),
                                    static_cast<unsigned long>(q));
      },
      RuleOrigin{"t_alpha", p, q});
}

Rational t_alpha_schedule(double alpha, int k) {
  const Integer scale = pow_int(10, static_cast<unsigned long>(std::min(k, 12)));
  const Rational scaled = Rational(alpha) * scale;
  Integer num;
  mpz_fdiv_q(num.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational r(num, scale);
  r.canonicalize();
  return r;
}

DigitRuleSet construct_T_alpha_real(double alpha, int depth) {
  if (!(alpha > 0 && alpha < 1)) throw Error("construct_T_alpha_real: alpha must lie in (0,1)");
  RuleOrigin origin{"t_alpha_real"};
  origin.alpha = alpha;
  return power4_set(
      depth, [&](int k) { return floor_pow4(k, t_alpha_schedule(alpha, k)); }, origin);
}

}  // namespace cantor
