#pragma once

// Finite-prefix evaluation of the net-covering faithfulness criterion
//
//     r_k = ln n_k / ln(n_1 ... n_{k-1})  ->  0 ?
//
// together with the square-summability series used by the entropy-dimension
// formula, and the interval-to-cylinder covers behind the sufficiency argument.
// Every verdict here is a heuristic read of a finite prefix, never a proof.

#include <span>
#include <vector>

#include "cantor/codec.hpp"

namespace cantor {

enum class Verdict { FaithfulTrend, NonFaithfulTrend, Inconclusive };
const char* to_string(Verdict v);

enum class SeriesTrend { Convergent, Divergent };
const char* to_string(SeriesTrend t);

struct FaithfulnessReport {
  int depth = 0;
  double tol = 0.0;
  std::vector<double> ratios;  // r_2 .. r_K
  int tail_window = 0;
  double limsup_estimate = 0.0;
  double extrapolated_limit = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<double> square_sum_partials;  // k = 1 .. K
  SeriesTrend square_sum_trend = SeriesTrend::Convergent;
  double square_sum_decay_exponent = 0.0;
};

/// (r_2, ..., r_K), denominators accumulated incrementally with compensated sums.
std::vector<double> ratio_sequence(const BaseSequence& bases, int depth);

/// max(10, K/5)
int default_tail_window(int depth);

/// Maximum over the last `window` values: the finite-depth stand-in for limsup.
double limsup_estimate(std::span<const double> ratios, int window);

/// Limit L of the least-squares fit r_k = L + c/(k-1) over the last `window` ratios.
double extrapolated_limit(std::span<const double> ratios, int window);

/// FaithfulTrend: tail monotone non-increasing and min(r_K, extrapolated limit) < tol.
/// NonFaithfulTrend: otherwise, when the tail is monotone and its minimum exceeds tol.
/// Inconclusive: anything else (for instance oscillating ratios).
Verdict faithfulness_verdict(const BaseSequence& bases, int depth, double tol);

/// Partial sums of (ln n_k / ln(n_1 ... n_k))^2 for k = 1..K.
std::vector<double> square_summability_partials(const BaseSequence& bases, int depth);

/// Reads convergence of a positive series off its terms: log-log slope p of the
/// tail terms against k, Convergent iff p > 1. `first_index` is the k of terms[0].
SeriesTrend series_trend(std::span<const double> terms, int first_index, int window,
                         double* decay_exponent = nullptr);

FaithfulnessReport faithfulness_report(const BaseSequence& bases, int depth, double tol);

struct IntervalCover {
  int rank = 0;  // k(I)
  std::vector<Cylinder> cylinders;
  Integer count_bound;  // 2 n_{k(I)} + 2
};

/// Covers [a, b) by the rank-k(I) cylinders meeting it, where k(I) is the smallest
/// rank at which some cylinder lies inside [a, b).
IntervalCover interval_to_cylinder_cover(const Rational& a, const Rational& b,
                                         const BaseSequence& bases);

}  // namespace cantor
