#include "cantor/faithfulness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cantor {

namespace {

constexpr double kMonotoneSlack = 1e-12;

std::span<const double> tail_of(std::span<const double> values, int window) {
  const auto w = static_cast<std::size_t>(std::min<int>(window, static_cast<int>(values.size())));
  return values.subspan(values.size() - w);
}

bool non_increasing(std::span<const double> v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1] * (1 + kMonotoneSlack)) return false;
  return true;
}

bool non_decreasing(std::span<const double> v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] < v[i - 1] * (1 - kMonotoneSlack)) return false;
  return true;
}

// Slope and intercept of the least-squares line through (x_i, y_i).
std::pair<double, double> fit_line(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  CompensatedSum sx, sy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx.add(x[i]);
    sy.add(y[i]);
  }
  const double mx = sx.value() / n, my = sy.value() / n;
  CompensatedSum sxy, sxx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy.add((x[i] - mx) * (y[i] - my));
    sxx.add((x[i] - mx) * (x[i] - mx));
  }
  if (sxx.value() == 0.0) return {0.0, my};
  const double slope = sxy.value() / sxx.value();
  return {slope, my - slope * mx};
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::FaithfulTrend: return "FaithfulTrend";
    case Verdict::NonFaithfulTrend: return "NonFaithfulTrend";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "unknown";
}

const char* to_string(SeriesTrend t) {
  return t == SeriesTrend::Convergent ? "convergent" : "divergent";
}

std::vector<double> ratio_sequence(const BaseSequence& bases, int depth) {
  if (depth < 2) throw Error("ratio_sequence: depth must be at least 2");
  bases.check_level(depth);
  std::vector<double> ratios;
  ratios.reserve(static_cast<std::size_t>(depth - 1));
  CompensatedSum denom(bases.log_base(1));
  for (int k = 2; k <= depth; ++k) {
    const double ln_nk = bases.log_base(k);
    ratios.push_back(ln_nk / denom.value());
    denom.add(ln_nk);
  }
  return ratios;
}

int default_tail_window(int depth) { return std::max(10, depth / 5); }

double limsup_estimate(std::span<const double> ratios, int window) {
  if (window < 1 || ratios.empty()) throw Error("limsup_estimate: empty window");
  if (window > static_cast<int>(ratios.size()))
    throw Error("limsup_estimate: window exceeds the number of ratios");
  const auto tail = tail_of(ratios, window);
  return *std::max_element(tail.begin(), tail.end());
}

double extrapolated_limit(std::span<const double> ratios, int window) {
  // ratios[i] is r_{i+2}, so the regressor 1/(k-1) is 1/(i+1).
  const auto tail = tail_of(ratios, window);
  const std::size_t offset = ratios.size() - tail.size();
  std::vector<double> x(tail.size());
  for (std::size_t i = 0; i < tail.size(); ++i) x[i] = 1.0 / static_cast<double>(offset + i + 1);
  if (tail.size() < 2) return tail.empty() ? 0.0 : tail.back();
  return fit_line(x, tail).second;
}

Verdict faithfulness_verdict(const BaseSequence& bases, int depth, double tol) {
  if (depth < 4) throw Error("faithfulness_verdict: depth must be at least 4");
  if (!(tol > 0)) throw Error("faithfulness_verdict: tol must be positive");
  const auto ratios = ratio_sequence(bases, depth);
  const int window = default_tail_window(depth);
  const auto tail = tail_of(ratios, window);
  const double last = tail.back();
  const double limit = extrapolated_limit(ratios, window);
  const double tail_min = *std::min_element(tail.begin(), tail.end());

  const bool falling = non_increasing(tail);
  if (falling && std::min(last, limit) < tol) return Verdict::FaithfulTrend;
  if ((falling || non_decreasing(tail)) && tail_min > tol) return Verdict::NonFaithfulTrend;
  return Verdict::Inconclusive;
}

std::vector<double> square_summability_partials(const BaseSequence& bases, int depth) {
  if (depth < 1) throw Error("square_summability_partials: depth must be at least 1");
  bases.check_level(depth);
  std::vector<double> partials;
  partials.reserve(static_cast<std::size_t>(depth));
  CompensatedSum denom, total;
  for (int k = 1; k <= depth; ++k) {
    const double ln_nk = bases.log_base(k);
    denom.add(ln_nk);
    const double term = ln_nk / denom.value();
    total.add(term * term);
    partials.push_back(total.value());
  }
  return partials;
}

SeriesTrend series_trend(std::span<const double> terms, int first_index, int window,
                         double* decay_exponent) {
  const auto tail = tail_of(terms, window);
  const std::size_t offset = terms.size() - tail.size();
  std::vector<double> x, y;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    if (!(tail[i] > 0)) continue;
    x.push_back(std::log(static_cast<double>(first_index) + static_cast<double>(offset + i)));
    y.push_back(std::log(tail[i]));
  }
  // Exactly-zero terms are summable whatever their pattern.
  double p = std::numeric_limits<double>::infinity();
  if (x.size() >= 2) p = -fit_line(x, y).first;
  if (decay_exponent) *decay_exponent = p;
  return p > 1.0 ? SeriesTrend::Convergent : SeriesTrend::Divergent;
}

FaithfulnessReport faithfulness_report(const BaseSequence& bases, int depth, double tol) {
  FaithfulnessReport r;
  r.depth = depth;
  r.tol = tol;
  r.ratios = ratio_sequence(bases, depth);
  r.tail_window = std::min<int>(default_tail_window(depth), static_cast<int>(r.ratios.size()));
  r.limsup_estimate = limsup_estimate(r.ratios, r.tail_window);
  r.extrapolated_limit = extrapolated_limit(r.ratios, r.tail_window);
  r.verdict = faithfulness_verdict(bases, depth, tol);
  r.square_sum_partials = square_summability_partials(bases, depth);

  std::vector<double> terms(r.square_sum_partials.size());
  for (std::size_t i = 0; i < terms.size(); ++i)
    terms[i] = r.square_sum_partials[i] - (i ? r.square_sum_partials[i - 1] : 0.0);
  r.square_sum_trend =
      series_trend(terms, 1, default_tail_window(depth), &r.square_sum_decay_exponent);
  return r;
}

IntervalCover interval_to_cylinder_cover(const Rational& a, const Rational& b,
                                         const BaseSequence& bases) {
  if (a < 0 || b > 1 || a > b) throw Error("interval cover: need 0 <= a < b <= 1");
  if (a == b) throw Error("interval cover: degenerate interval");

  Integer count = 1;  // n_1 ... n_k
  int rank = 0;
  for (;; ++rank) {
    if (rank > 0) {
      if (rank > bases.max_depth())
        throw Error("interval cover: no contained cylinder up to max_depth " +
                    std::to_string(bases.max_depth()));
      count *= bases.base(rank);
    }
    // First cylinder starting at or after a is [lo/count, (lo+1)/count).
    const Rational scaled_a = a * count;
    Integer lo;
    mpz_cdiv_q(lo.get_mpz_t(), scaled_a.get_num_mpz_t(), scaled_a.get_den_mpz_t());
    if (Rational(lo + 1) <= b * count) break;
  }

  const Rational scaled_a = a * count, scaled_b = b * count;
  Integer first, past;
  mpz_fdiv_q(first.get_mpz_t(), scaled_a.get_num_mpz_t(), scaled_a.get_den_mpz_t());
  mpz_cdiv_q(past.get_mpz_t(), scaled_b.get_num_mpz_t(), scaled_b.get_den_mpz_t());

  IntervalCover cover;
  cover.rank = rank;
  cover.count_bound = rank == 0 ? Integer(1) : Integer(2 * bases.base(rank) + 2);
  for (Integer i = first; i < past; ++i)
    cover.cylinders.push_back(cylinder_of(word_from_index(i, bases, rank)));
  if (Integer(cover.cylinders.size()) > cover.count_bound)
    throw Error("interval cover: piece count exceeds 2 n_k + 2");
  return cover;
}

}  // namespace cantor
