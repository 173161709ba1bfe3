#include "cantor/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace cantor {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error("alpha must lie in (0, 1], got " + format15(alpha));
}

void check_rank(const DigitRuleSet& set, int k) {
  if (k < 1 || k > set.depth())
    throw Error("rank " + std::to_string(k) + " outside 1.." + std::to_string(set.depth()));
}

// Largest alpha in [0,1] with pred(alpha) true, for pred true at 0 and monotone.
template <typename Pred>
double bisect_last_true(Pred pred) {
  if (pred(1.0)) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double log_tolerance(double log_length) { return 1e-12 * std::max(1.0, std::abs(log_length)); }

}  // namespace

const char* to_string(CoveringKind kind) {
  switch (kind) {
    case CoveringKind::Cylinders: return "cylinders";
    case CoveringKind::MergedRuns: return "runs";
    case CoveringKind::DpOptimal: return "dp";
  }
  return "unknown";
}

std::vector<double> CoveringReport::log2_volumes() const {
  std::vector<double> out;
  for (double v : log_volumes) out.push_back(v / std::numbers::ln2);
  return out;
}

double cylinder_cover_volume(const DigitRuleSet& set, int k, double alpha) {
  check_alpha(alpha);
  check_rank(set, k);
  CompensatedSum acc;
  for (int i = 1; i <= k; ++i) acc.add(set.log_level_count(i));
  const double log_length = -set.bases().log_product(k);
  acc.add(alpha * log_length);
  return acc.value();
}

double merged_run_cover_volume(const DigitRuleSet& set, int k, double alpha) {
  check_alpha(alpha);
  check_rank(set, k);
  const double log_pk = set.bases().log_product(k);
  std::vector<double> run_terms;
  for (const auto& [first, last] : set.allowed_digits(k).ranges())
    run_terms.push_back(alpha * (log_of(Integer(last - first + 1)) - log_pk));
  CompensatedSum acc(set.log_cylinder_count(k - 1));
  acc.add(log_sum_exp(run_terms));
  return acc.value();
}

Integer merged_run_piece_count(const DigitRuleSet& set, int k) {
  check_rank(set, k);
  return set.cylinder_count(k - 1) * static_cast<unsigned long>(set.allowed_digits(k).ranges().size());
}

CylinderTree CylinderTree::from_predicate(const BaseSequence& bases, int k_max,
                                          const std::function<bool(const DigitWord&)>& admit,
                                          std::size_t node_budget) {
  if (k_max < 0) throw Error("cylinder tree: negative depth");
  if (k_max > 0) bases.check_level(k_max);
  CylinderTree tree;
  std::vector<double> log_len(static_cast<std::size_t>(k_max) + 1, 0.0);
  for (int k = 1; k <= k_max; ++k) log_len[static_cast<std::size_t>(k)] = -bases.log_product(k);

  // Depth-first expansion; the explicit stack keeps node order deterministic.
  struct Pending {
    std::size_t index;
    DigitWord word;
  };
  tree.nodes.push_back({0, 0.0, {}});
  std::vector<Pending> stack{{0, DigitWord(bases)}};
  while (!stack.empty()) {
    Pending top = std::move(stack.back());
    stack.pop_back();
    const int rank = top.word.rank();
    if (rank == k_max) continue;
    const Integer n = bases.base(rank + 1);
    std::vector<Pending> kids;
    for (Integer d = 0; d < n; ++d) {
      DigitWord child = top.word.extended(d);
      if (!admit(child)) continue;
      if (tree.nodes.size() >= node_budget)
        throw Error("cylinder tree: node budget of " + std::to_string(node_budget) + " exceeded");
      tree.nodes[top.index].children.push_back(tree.nodes.size());
      tree.nodes.push_back({rank + 1, log_len[static_cast<std::size_t>(rank + 1)], {}});
      kids.push_back({tree.nodes.size() - 1, std::move(child)});
    }
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(std::move(*it));
  }
  return tree;
}

CylinderTree CylinderTree::surviving(const DigitRuleSet& set, int k_max, std::size_t node_budget) {
  if (k_max > set.depth()) throw Error("cylinder tree: depth beyond the set's horizon");
  // Checking only the newest digit suffices: parents were admitted already.
  auto admit = [&set](const DigitWord& w) {
    return set.allowed_digits(w.rank()).contains(w.digits().back());
  };
  // Refuse before enumerating when the count is known to be too large.
  if (set.cylinder_count(k_max) >= node_budget)
    throw Error("cylinder tree: node budget of " + std::to_string(node_budget) + " exceeded");
  return from_predicate(set.bases(), k_max, admit, node_budget);
}

double optimal_antichain_cost(const CylinderTree& tree, double alpha) {
  check_alpha(alpha);
  if (tree.nodes.empty()) throw Error("optimal_antichain_cost: empty tree");
  int deepest = 0;
  for (const auto& n : tree.nodes) deepest = std::max(deepest, n.rank);

  // Children always follow their parent, so a reverse sweep is bottom-up.
  std::vector<double> cost(tree.nodes.size(), kNegInf);
  for (std::size_t i = tree.nodes.size(); i-- > 0;) {
    const auto& node = tree.nodes[i];
    const double self = alpha * node.log_length;
    if (node.children.empty()) {
      // Dead branches (no surviving leaf at the deepest rank) need no cover.
      cost[i] = node.rank == deepest ? self : kNegInf;
      continue;
    }
    std::vector<double> kids;
    for (auto c : node.children) kids.push_back(cost[c]);
    const double split = log_sum_exp(kids);
    cost[i] = split == kNegInf ? kNegInf : std::min(self, split);
  }
  return cost[0];
}

double dp_optimal_cylinder_cover(const DigitRuleSet& set, int k_max, double alpha, DpMode mode,
                                 std::size_t node_budget) {
  check_alpha(alpha);
  check_rank(set, k_max);
  if (mode == DpMode::Explicit)
    return optimal_antichain_cost(CylinderTree::surviving(set, k_max, node_budget), alpha);

  double cost = -alpha * set.bases().log_product(k_max);
  for (int k = k_max - 1; k >= 0; --k) {
    const double self = -alpha * set.bases().log_product(k);
    cost = std::min(self, set.log_level_count(k + 1) + cost);
  }
  return cost;
}

std::pair<int, Integer> dp_optimal_cut(const DigitRuleSet& set, int k_max, double alpha) {
  check_alpha(alpha);
  check_rank(set, k_max);
  // Homogeneous DP: the optimum cuts every branch at the same rank.
  int cut = k_max;
  double cost = -alpha * set.bases().log_product(k_max);
  for (int k = k_max - 1; k >= 0; --k) {
    const double self = -alpha * set.bases().log_product(k);
    const double split = set.log_level_count(k + 1) + cost;
    if (self <= split) {
      cost = self;
      cut = k;
    } else {
      cost = split;
    }
  }
  return {cut, set.cylinder_count(cut)};
}

double critical_exponent(const DigitRuleSet& set, int k) {
  check_rank(set, k);
  return set.log_cylinder_count(k) / set.bases().log_product(k);
}

double merged_run_critical_exponent(const DigitRuleSet& set, int k) {
  check_rank(set, k);
  const auto& runs = set.allowed_digits(k).ranges();
  const bool equal_runs = std::all_of(runs.begin(), runs.end(), [&](const auto& r) {
    return r.second - r.first == runs.front().second - runs.front().first;
  });
  if (equal_runs) {
    const double log_pieces = log_of(merged_run_piece_count(set, k));
    const double log_len =
        log_of(Integer(runs.front().second - runs.front().first + 1)) - set.bases().log_product(k);
    return log_len == 0.0 ? 1.0 : std::min(1.0, -log_pieces / log_len);
  }
  return bisect_last_true(
      [&](double a) { return a == 0.0 || merged_run_cover_volume(set, k, a) >= 0.0; });
}

double dp_critical_exponent(const DigitRuleSet& set, int k_max) {
  check_rank(set, k_max);
  return bisect_last_true([&](double a) {
    return a == 0.0 || dp_optimal_cylinder_cover(set, k_max, a) >= -1e-12;
  });
}

double billingsley_ratio(const ProductMeasure& measure, const DigitWord& word) {
  if (word.rank() < 1) throw Error("billingsley_ratio: needs a word of rank >= 1");
  const double log_mu = cylinder_log_measure(measure, word);
  if (log_mu == kNegInf)
    throw Error("billingsley_ratio: word lies outside the measure's support");
  return log_mu / cylinder_of(word).log_length;
}

namespace {

void check_support(const ProductMeasure& measure, const DigitRuleSet& set, int k) {
  if (!(measure.bases() == set.bases()))
    throw Error("mass distribution: measure and set use different bases");
  if (k > measure.depth() || k > set.depth())
    throw Error("mass distribution: rank beyond horizon");
  for (int i = 1; i <= k; ++i) {
    if (!(measure.level(i).support() == set.allowed_digits(i)))
      throw Error("mass distribution: support mismatch at level " + std::to_string(i));
  }
}

}  // namespace

MassCertificate mass_distribution_certificate(const ProductMeasure& measure,
                                              const DigitRuleSet& set, int k,
                                              const Rational& alpha) {
  Rational a = alpha;
  a.canonicalize();
  if (!(a > 0 && a <= 1)) throw Error("mass distribution: alpha must lie in (0, 1]");
  if (!measure.exact() || !a.get_num().fits_ulong_p() || !a.get_den().fits_ulong_p())
    return mass_distribution_certificate(measure, set, k, a.get_d());
  check_support(measure, set, k);

  const unsigned long p = a.get_num().get_ui(), q = a.get_den().get_ui();
  MassCertificate cert;
  cert.exact = true;
  cert.holds = true;
  Rational heaviest = 1;
  Integer count = 1;  // 1 / |rank-j cylinder|
  CompensatedSum log_mu, log_len;
  for (int j = 1; j <= k; ++j) {
    const auto& level = measure.level(j);
    heaviest *= level.max_probability();
    count *= set.bases().base(j);
    log_mu.add(log_of(level.max_probability()));
    log_len.add(-set.bases().log_base(j));

    // mu <= L^{p/q}  <=>  num^q * count^p <= den^q
    const Integer lhs = pow_int(heaviest.get_num(), q) * pow_int(count, p);
    const Integer rhs = pow_int(heaviest.get_den(), q);
    const int cmp = ::cmp(lhs, rhs);
    const double log_ratio = log_mu.value() - a.get_d() * log_len.value();
    ++cert.ranks_checked;
    if (cmp == 0) ++cert.equality_ranks;
    if (cmp > 0 && cert.holds) {
      cert.holds = false;
      cert.first_failing_rank = j;
    }
    if (log_ratio > cert.worst_log_ratio || cert.worst_rank == 0) {
      cert.worst_log_ratio = cmp == 0 ? 0.0 : log_ratio;
      cert.worst_rank = j;
    }
  }
  return cert;
}

MassCertificate mass_distribution_certificate(const ProductMeasure& measure,
                                              const DigitRuleSet& set, int k, double alpha) {
  check_alpha(alpha);
  check_support(measure, set, k);
  MassCertificate cert;
  cert.holds = true;
  CompensatedSum log_mu, log_len;
  for (int j = 1; j <= k; ++j) {
    log_mu.add(log_of(measure.level(j).max_probability()));
    log_len.add(-set.bases().log_base(j));
    const double log_ratio = log_mu.value() - alpha * log_len.value();
    const double tol = log_tolerance(log_len.value());
    ++cert.ranks_checked;
    if (std::abs(log_ratio) <= tol) ++cert.equality_ranks;
    if (log_ratio > tol && cert.holds) {
      cert.holds = false;
      cert.first_failing_rank = j;
    }
    if (log_ratio > cert.worst_log_ratio || cert.worst_rank == 0) {
      cert.worst_log_ratio = log_ratio;
      cert.worst_rank = j;
    }
  }
  return cert;
}

TBounds t_bounds(double C, double delta) {
  if (!(C > 0)) throw Error("t_bounds: C must be positive");
  if (!(delta >= 0 && delta < C)) throw Error("t_bounds: need 0 <= delta < C");
  return {2.0 / (2.0 + C), (4.0 + C) / (4.0 + 3.0 * C),
          (4.0 + C - 2.0 * delta) / (4.0 + 3.0 * C + 4.0 * delta)};
}

std::vector<double> alpha_grid(int points) {
  if (points < 1) throw Error("alpha_grid: need at least one point");
  std::vector<double> out;
  for (int i = 1; i <= points; ++i) out.push_back(static_cast<double>(i) / points);
  return out;
}

CoveringReport covering_report(const DigitRuleSet& set, int k, CoveringKind kind,
                               const std::vector<double>& alphas) {
  check_rank(set, k);
  CoveringReport r;
  r.depth = k;
  r.kind = kind;
  r.alphas = alphas;
  for (double a : alphas) {
    switch (kind) {
      case CoveringKind::Cylinders: r.log_volumes.push_back(cylinder_cover_volume(set, k, a)); break;
      case CoveringKind::MergedRuns: r.log_volumes.push_back(merged_run_cover_volume(set, k, a)); break;
      case CoveringKind::DpOptimal: r.log_volumes.push_back(dp_optimal_cylinder_cover(set, k, a)); break;
    }
  }
  switch (kind) {
    case CoveringKind::Cylinders:
      r.piece_count = set.cylinder_count(k);
      r.critical_exponent = critical_exponent(set, k);
      break;
    case CoveringKind::MergedRuns:
      r.piece_count = merged_run_piece_count(set, k);
      r.critical_exponent = merged_run_critical_exponent(set, k);
      break;
    case CoveringKind::DpOptimal:
      r.piece_count = alphas.empty() ? Integer(1) : dp_optimal_cut(set, k, alphas.front()).second;
      r.critical_exponent = dp_critical_exponent(set, k);
      break;
  }
  return r;
}

}  // namespace cantor
