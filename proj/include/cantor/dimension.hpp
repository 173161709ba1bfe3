#pragma once

// Alpha-volumes of coverings of digit-restricted sets, critical exponents,
// Billingsley ratios and mass-distribution certificates.
//
// Three covering classes are exposed:
//   cylinders    - every surviving rank-k cylinder
//   merged runs  - surviving rank-(k-1) prefixes, each extended by a maximal run
//                  of consecutive allowed level-k digits, taken as one interval
//   dp           - the cheapest antichain of surviving cylinders of rank <= k
// Merged runs give upper bounds for the Hausdorff premeasure; certificates give
// lower bounds for the cylinder-restricted one. All volumes are natural logs.

#include <functional>
#include <limits>
#include <vector>

#include "cantor/measure.hpp"
#include "cantor/sets.hpp"

namespace cantor {

enum class CoveringKind { Cylinders, MergedRuns, DpOptimal };
const char* to_string(CoveringKind kind);

struct CoveringReport {
  int depth = 0;
  CoveringKind kind = CoveringKind::Cylinders;
  Integer piece_count;  // DP: pieces of the optimal antichain at the first grid point
  std::vector<double> alphas;
  std::vector<double> log_volumes;
  double critical_exponent = 0.0;

  /// Same volumes in base 2.
  std::vector<double> log2_volumes() const;
};

/// ln(N_k L_k^alpha), N_k = |V_1|...|V_k|, L_k = 1/(n_1...n_k).
double cylinder_cover_volume(const DigitRuleSet& set, int k, double alpha);

/// ln sum (piece length)^alpha over the merged-run pieces at rank k.
double merged_run_cover_volume(const DigitRuleSet& set, int k, double alpha);
/// Number of merged-run pieces at rank k: N_{k-1} times the run count of V_k.
Integer merged_run_piece_count(const DigitRuleSet& set, int k);

/// Surviving part of the cylinder tree down to some rank, stored explicitly.
struct CylinderTree {
  struct Node {
    int rank = 0;
    double log_length = 0.0;
    std::vector<std::size_t> children;
  };
  std::vector<Node> nodes;  // nodes[0] is the root [0,1)

  /// Every prefix for which `admit` holds, down to rank k_max; throws past node_budget.
  static CylinderTree from_predicate(const BaseSequence& bases, int k_max,
                                     const std::function<bool(const DigitWord&)>& admit,
                                     std::size_t node_budget);
  static CylinderTree surviving(const DigitRuleSet& set, int k_max, std::size_t node_budget);
};

/// Bottom-up cost(node) = min(|node|^alpha, sum cost(children)), leaves at the
/// deepest rank scored |leaf|^alpha. Returns ln cost(root).
double optimal_antichain_cost(const CylinderTree& tree, double alpha);

enum class DpMode { Homogeneous, Explicit };

inline constexpr std::size_t kDefaultNodeBudget = 2'000'000;

/// Cheapest cylinder antichain covering the surviving rank-k_max cylinders. The
/// homogeneous mode keeps one representative per level:
/// cost_k = min(L_k^alpha, |V_{k+1}| cost_{k+1}).
double dp_optimal_cylinder_cover(const DigitRuleSet& set, int k_max, double alpha,
                                 DpMode mode = DpMode::Homogeneous,
                                 std::size_t node_budget = kDefaultNodeBudget);

/// Rank at which the homogeneous DP cuts, and the piece count of that cut.
std::pair<int, Integer> dp_optimal_cut(const DigitRuleSet& set, int k_max, double alpha);

/// sum ln|V_i| / sum ln n_i: where the rank-k cylinder cover has alpha-volume 1.
double critical_exponent(const DigitRuleSet& set, int k);
/// Root in alpha of merged_run_cover_volume(set, k, alpha) = 0.
double merged_run_critical_exponent(const DigitRuleSet& set, int k);
/// sup { alpha : dp cost(alpha) = 1 }.
double dp_critical_exponent(const DigitRuleSet& set, int k_max);

/// ln mu(cylinder) / ln |cylinder|.
double billingsley_ratio(const ProductMeasure& measure, const DigitWord& word);

struct MassCertificate {
  bool holds = false;
  bool exact = false;            // decided in exact rational arithmetic
  int ranks_checked = 0;
  int equality_ranks = 0;        // ranks with mu = |cylinder|^alpha
  int first_failing_rank = 0;    // 0 when none fail
  int worst_rank = 0;
  double worst_log_ratio = kNegInf;  // max over ranks of ln(max mu / L^alpha)
};

/// Checks mu(D) <= |D|^alpha for the heaviest surviving cylinder of every rank
/// 1..k (all rank-j cylinders share one length). Exact when alpha is rational
/// and the measure's level vectors sum exactly to one.
MassCertificate mass_distribution_certificate(const ProductMeasure& measure,
                                              const DigitRuleSet& set, int k,
                                              const Rational& alpha);
MassCertificate mass_distribution_certificate(const ProductMeasure& measure,
                                              const DigitRuleSet& set, int k, double alpha);

struct TBounds {
  double upper = 0.0;        // 2 / (2 + C)
  double lower = 0.0;        // (4 + C) / (4 + 3C)
  double lower_delta = 0.0;  // (4 + C - 2 delta) / (4 + 3C + 4 delta)
};

TBounds t_bounds(double C, double delta);

/// i/points for i = 1..points.
std::vector<double> alpha_grid(int points = 512);

CoveringReport covering_report(const DigitRuleSet& set, int k, CoveringKind kind,
                               const std::vector<double>& alphas);

}  // namespace cantor
