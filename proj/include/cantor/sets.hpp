#pragma once

// Digit-restricted sets E = { x : a_k(x) in V_k for every k } and the named
// constructions built from them.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantor/codec.hpp"

namespace cantor {

/// Finite set of nonnegative integers stored as sorted, disjoint, non-adjacent
/// inclusive ranges. Each range is a maximal run of consecutive members.
class IntervalUnion {
 public:
  using Range = std::pair<Integer, Integer>;  // [first, last]

  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Range> ranges);
  /// {first, ..., last}
  static IntervalUnion range(const Integer& first, const Integer& last);

  const std::vector<Range>& ranges() const { return ranges_; }
  bool empty() const { return ranges_.empty(); }
  Integer cardinality() const;
  bool contains(const Integer& d) const;
  /// Number of members strictly below d.
  Integer count_below(const Integer& d) const;
  /// The i-th smallest member, 0-based.
  Integer nth(const Integer& i) const;
  const Integer& min() const { return ranges_.front().first; }
  const Integer& max() const { return ranges_.back().second; }

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<Range> ranges_;
};

/// How a DigitRuleSet was produced; lets JSON round-trip named rules compactly.
struct RuleOrigin {
  std::string rule = "explicit";  // explicit | full | example1 | example2 | t_alpha | t_alpha_real | T
  long p = 0, q = 0;
  double alpha = 0.0;
};

class DigitRuleSet {
 public:
  DigitRuleSet(BaseSequence bases, std::vector<IntervalUnion> levels,
               std::vector<int> special_levels = {}, RuleOrigin origin = {});

  const BaseSequence& bases() const { return bases_; }
  int depth() const { return static_cast<int>(levels_.size()); }
  const std::vector<IntervalUnion>& levels() const { return levels_; }
  const std::vector<int>& special_levels() const { return special_; }
  const RuleOrigin& origin() const { return origin_; }

  const IntervalUnion& allowed_digits(int k) const;
  /// |V_1| ... |V_k|, the number of surviving rank-k cylinders.
  Integer cylinder_count(int k) const;
  /// ln |V_k|
  double log_level_count(int k) const;
  /// sum_{i<=k} ln |V_i|, compensated.
  double log_cylinder_count(int k) const;
  bool admits(const DigitWord& word) const;

  friend bool operator==(const DigitRuleSet& a, const DigitRuleSet& b) {
    return a.bases_ == b.bases_ && a.levels_ == b.levels_ && a.special_ == b.special_;
  }

 private:
  BaseSequence bases_;
  std::vector<IntervalUnion> levels_;
  std::vector<int> special_;
  RuleOrigin origin_;
};

IntervalUnion allowed_digits(const DigitRuleSet& set, int k);

/// Every digit allowed at every level up to `depth`.
DigitRuleSet full_set(const BaseSequence& bases, int depth);

/// Indices picked out of a base sequence for the non-faithfulness construction.
struct SubsequenceSelection {
  double C = 0.0;
  double delta = 0.0;
  double epsilon = 0.0;
  int depth = 0;
  int N0 = 0, N1 = 0, N2 = 0;
  std::vector<int> ki;  // (n_1..n_{k-1})^{C-delta} <= n_k <= (n_1..n_{k-1})^{C+delta}, k > N2
  std::vector<int> kj;  // greedy thinning of ki by the gap inequality
};

SubsequenceSelection select_subsequences(const BaseSequence& bases, double C, double delta,
                                         double epsilon, int depth);

/// Recomputes both defining inequalities for every selected index from scratch.
/// Returns an empty string when the selection checks out, else a description.
std::string verify_selection(const BaseSequence& bases, const SubsequenceSelection& sel);

/// Gap ratio ln(n_{prev+1} ... n_{next-1}) / ln(n_1 ... n_{next-1}).
double gap_ratio(const BaseSequence& bases, int prev, int next);

/// V_k = {0..floor(sqrt n_k)} on the thinned indices, all digits elsewhere.
DigitRuleSet construct_T(const BaseSequence& bases, const SubsequenceSelection& selection);

/// n_k = 4^k, V_k = {0..2^k - 1}.
DigitRuleSet construct_example1(int depth);

/// n_k = 4^k, V_k = {0..2^k - 1}, widened to {0..k 2^k - 1} at k = 2^s.
DigitRuleSet construct_example2(int depth);

/// n_k = 4^k, V_k = {0..floor(n_k^{p/q}) - 1}, widened by a factor k at k = 2^s.
DigitRuleSet construct_T_alpha(long p, long q, int depth);

/// Irrational exponents: level k uses p_k/q_k = floor(alpha 10^m)/10^m, m = min(k, 12).
DigitRuleSet construct_T_alpha_real(double alpha, int depth);

/// Exponent p_k/q_k used at level k by construct_T_alpha_real.
Rational t_alpha_schedule(double alpha, int k);

bool is_power_of_two(long k);

}  // namespace cantor
