#include "cantor/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cantor {

namespace {

std::string num(double x) { return format15(x); }
std::string num(const Integer& n) { return n.get_str(); }
std::string num(int n) { return std::to_string(n); }
std::string num(bool b) { return b ? "true" : "false"; }

double log2_of(double natural_log) { return natural_log / std::numbers::ln2; }

struct Builder {
  ReportBundle bundle;

  // table() hands out references, so the vector must never reallocate.
  Builder() { bundle.tables.reserve(16); }

  void check(std::string name, bool pass, std::string detail) {
    bundle.checks.push_back({std::move(name), pass, std::move(detail)});
  }
  CsvTable& table(std::string name, std::vector<std::string> header) {
    bundle.tables.push_back({std::move(name), std::move(header), {}});
    return bundle.tables.back();
  }
};

DigitWord zero_word(const BaseSequence& bases, int rank) {
  return DigitWord(bases, std::vector<Integer>(static_cast<std::size_t>(rank), Integer(0)));
}

// --- example1: 2^k of 4^k digits --------------------------------------------

void run_example1(const ReproduceConfig& cfg, Builder& b) {
  const int depth = cfg.depth;
  const auto set = construct_example1(depth);
  const auto mu = uniform_on(set);
  const Rational half(1, 2);
  std::mt19937_64 gen(cfg.seed);
  const auto word = sample(mu, gen, depth);

  auto& t = b.table("example1_volumes",
                    {"k", "log2_merged_run_half_volume", "expected_log2", "log2_cylinder_half_volume",
                     "log2_dp_half_volume", "critical_exponent", "billingsley_ratio",
                     "measure_squared_equals_length"});
  double worst_merged = 0.0, worst_ratio = 0.0, worst_crit = 0.0;
  bool exact_identity = true;
  for (int k = 1; k <= depth; ++k) {
    const double merged = log2_of(merged_run_cover_volume(set, k, 0.5));
    const double expected = -0.5 * k;
    const double ratio = billingsley_ratio(mu, word.prefix(k));
    const double crit = critical_exponent(set, k);
    const auto prefix = word.prefix(k);
    const Rational m = cylinder_measure(mu, prefix);
    const bool identity = m * m == cylinder_of(prefix).length;
    exact_identity = exact_identity && identity;
    worst_merged = std::max(worst_merged, std::abs(merged - expected));
    worst_ratio = std::max(worst_ratio, std::abs(ratio - 0.5));
    worst_crit = std::max(worst_crit, std::abs(crit - 0.5));
    t.rows.push_back({num(k), num(merged), num(expected),
                      num(log2_of(cylinder_cover_volume(set, k, 0.5))),
                      num(log2_of(dp_optimal_cylinder_cover(set, k, 0.5))), num(crit), num(ratio),
                      num(identity)});
  }
  const auto cert = mass_distribution_certificate(mu, set, depth, half);

  b.check("example1.merged_run_half_volume", worst_merged <= 1e-9,
          "max |log2 V_k + k/2| = " + num(worst_merged) + " over k=1.." + num(depth));
  b.check("example1.certificate_equality", cert.holds && cert.exact && cert.equality_ranks == depth,
          "exact mu(D) = |D|^(1/2) at " + num(cert.equality_ranks) + " of " + num(depth) + " ranks");
  b.check("example1.billingsley_half", exact_identity && worst_ratio <= 1e-12,
          "mu(D)^2 = |D| exactly on a sampled word; max |ratio - 1/2| = " + num(worst_ratio));
  b.check("example1.critical_exponent_half", worst_crit <= 1e-12,
          "max |alpha_k - 1/2| = " + num(worst_crit));

  b.bundle.document["results"] = Json{
      {"set", to_json(set)},
      {"certificate_half", to_json(cert)},
      {"merged_runs", to_json(covering_report(set, depth, CoveringKind::MergedRuns, {0.5}))},
      {"claims", Json{{"H_half_A_cylinders_at_least", 1}, {"merged_run_volume_log2_at_depth", real_to_json(-0.5 * depth)}}}};
}

// --- example2: widened levels at powers of two ------------------------------

void run_example2(const ReproduceConfig& cfg, Builder& b) {
  const int specials = cfg.depth;
  const int depth = 1 << specials;
  const auto set = construct_example2(depth);
  const auto mu = uniform_on(set);

  auto& runs = b.table("example2_runs", {"s", "k", "log2_merged_run_half_volume", "expected_log2",
                                          "critical_exponent"});
  double worst = 0.0;
  for (int s = 1; s <= specials; ++s) {
    const int k = 1 << s;
    const double got = log2_of(merged_run_cover_volume(set, k, 0.5));
    const double expected = -0.5 * (static_cast<double>(k) - static_cast<double>(s) * s);
    worst = std::max(worst, std::abs(got - expected));
    runs.rows.push_back({num(s), num(k), num(got), num(expected), num(critical_exponent(set, k))});
  }
  b.check("example2.merged_run_half_volume", worst <= 1e-9,
          "max |log2 V - (-(2^s - s^2)/2)| = " + num(worst) + " for s=1.." + num(specials));

  // mu(D_n) = 2^-(n(n+1)/2 + ([log2 n]+1)[log2 n]/2) on T.
  bool formula = true;
  for (int n = 1; n <= depth; ++n) {
    const long lg = static_cast<long>(std::floor(std::log2(static_cast<double>(n))));
    const unsigned long e = static_cast<unsigned long>(n) * (n + 1) / 2 + (lg + 1) * lg / 2;
    formula = formula && cylinder_measure(mu, zero_word(set.bases(), n)) == Rational(1, pow_int(2, e));
  }
  b.check("example2.measure_formula", formula,
          "exact cylinder measures match the closed form for n=1.." + num(depth));

  auto& splits = b.table("example2_split", {"m", "depth", "measures", "all_certificates_hold",
                                            "partition_ok", "lower_bound_H_half"});
  bool all_hold = true;
  Integer bound = 0;
  for (int m = 1; m <= cfg.split_levels; ++m) {
    const int d = (1 << m) + 1;
    const long k = 1L << m;
    const auto whole = construct_example2(d);
    bool holds = true, partition = true;
    std::vector<IntervalUnion::Range> pieces;
    for (long j = 0; j < k; ++j) {
      const auto part = example2_split_set(m, j, d);
      const auto cert = mass_distribution_certificate(uniform_on(part), part, d, Rational(1, 2));
      holds = holds && cert.holds && cert.exact;
      for (int lvl = 1; lvl <= d; ++lvl)
        if (lvl != k) partition = partition && part.allowed_digits(lvl) == whole.allowed_digits(lvl);
      for (const auto& r : part.allowed_digits(static_cast<int>(k)).ranges()) pieces.push_back(r);
    }
    // Pieces must tile V_{2^m} without overlap.
    std::sort(pieces.begin(), pieces.end());
    Integer next = 0;
    for (const auto& [first, last] : pieces) {
      partition = partition && first == next;
      next = last + 1;
    }
    partition = partition && next == whole.allowed_digits(static_cast<int>(k)).cardinality();
    all_hold = all_hold && holds && partition;
    if (holds && partition) bound = Integer(k);
    splits.rows.push_back({num(m), num(d), std::to_string(k), num(holds), num(partition),
                           holds && partition ? std::to_string(k) : "0"});
  }
  const Integer target = pow_int(2, static_cast<unsigned long>(cfg.split_levels));
  b.check("example2.split_certificates", all_hold && bound == target,
          "2^m split measures certified at alpha=1/2 for m=1.." + num(cfg.split_levels) +
              "; H^(1/2)(T, cylinders) >= " + num(bound));

  b.bundle.document["results"] =
      Json{{"set", to_json(set)},
           {"lower_bound_H_half_T_cylinders", integer_to_json(bound)},
           {"merged_runs", to_json(covering_report(set, depth, CoveringKind::MergedRuns, {0.5}))}};
}

// --- theorem_T: sqrt digits on a sparse subsequence -------------------------

void run_theorem_T(const ReproduceConfig& cfg, Builder& b) {
  const int depth = cfg.depth;
  const auto bases = BaseSequence::double_exponential(2, depth);
  const auto report = faithfulness_report(bases, depth, 0.01);
  const auto sel = select_subsequences(bases, cfg.C, cfg.delta, cfg.epsilon, depth);
  const auto problems = verify_selection(bases, sel);
  const auto set = construct_T(bases, sel);
  const auto mu = t_measure(bases, sel.kj, depth);
  const auto bounds = t_bounds(cfg.C, cfg.delta);
  std::mt19937_64 gen(cfg.seed);
  const auto word = sample(mu, gen, depth);

  auto& t = b.table("theorem_T", {"k", "in_kj", "cylinder_critical_exponent",
                                  "merged_run_critical_exponent", "billingsley_ratio", "lower_delta"});
  double min_ratio = 1.0, min_ratio_kj = 1.0;
  for (int k = 1; k <= depth; ++k) {
    const bool special = std::binary_search(sel.kj.begin(), sel.kj.end(), k);
    const double ratio = billingsley_ratio(mu, word.prefix(k));
    min_ratio = std::min(min_ratio, ratio);
    if (special) min_ratio_kj = std::min(min_ratio_kj, ratio);
    t.rows.push_back({num(k), num(special), num(critical_exponent(set, k)),
                      num(merged_run_critical_exponent(set, k)), num(ratio), num(bounds.lower_delta)});
  }
  const int deepest = sel.kj.back();
  const double cyl = critical_exponent(set, deepest);
  const double runs = merged_run_critical_exponent(set, deepest);
  const auto cert = mass_distribution_certificate(mu, set, depth, bounds.lower_delta);

  b.check("theorem_T.selection_self_certifies", problems.empty(),
          problems.empty() ? "power bounds and gap inequality recomputed for ki=" + Json(sel.ki).dump() +
                                 ", kj=" + Json(sel.kj).dump()
                           : problems);
  b.check("theorem_T.cylinder_exponent_below_upper", cyl <= bounds.upper + 0.05,
          "alpha at k=" + num(deepest) + " is " + num(cyl) + " <= 2/(2+C)+0.05 = " +
              num(bounds.upper + 0.05));
  b.check("theorem_T.merged_run_exponent_below_upper", runs <= bounds.upper + 0.05,
          "alpha at k=" + num(deepest) + " is " + num(runs));
  b.check("theorem_T.billingsley_above_lower", min_ratio_kj >= bounds.lower_delta - 1e-9,
          "min ratio at kj = " + num(min_ratio_kj) + ", over all ranks = " + num(min_ratio) +
              ", bound = " + num(bounds.lower_delta));
  b.check("theorem_T.certificate_at_lower_delta", cert.holds,
          "mu(D) <= |D|^" + num(bounds.lower_delta) + " for ranks 1.." + num(depth));

  b.bundle.document["results"] = Json{{"faithfulness", to_json(report)},
                                      {"selection", to_json(sel)},
                                      {"bounds", to_json(bounds)},
                                      {"set", to_json(set)},
                                      {"certificate_lower_delta", to_json(cert)}};
}

// --- proposition1: entropy dimension ---------------------------------------

ProductMeasure half_on_constant4(int depth) {
  const auto bases = BaseSequence::constant(4, depth);
  std::vector<LevelDistribution> levels(
      static_cast<std::size_t>(depth),
      LevelDistribution::explicit_probabilities({Rational(1, 2), Rational(1, 2), 0, 0}));
  return ProductMeasure(bases, std::move(levels));
}

void run_proposition1(const ReproduceConfig& cfg, Builder& b) {
  const int depth = cfg.depth;
  struct Case {
    std::string name;
    ProductMeasure measure;
    double expected;
  };
  std::vector<Case> cases{
      {"uniform_constant2", uniform_full(BaseSequence::constant(2, depth), depth), 1.0},
      {"uniform_constant3", uniform_full(BaseSequence::constant(3, depth), depth), 1.0},
      {"uniform_power4", uniform_full(BaseSequence::power(4, depth), depth), 1.0},
      {"example1", uniform_on(construct_example1(depth)), 0.5},
      {"constant4_half", half_on_constant4(depth), 0.5},
  };

  Json results = Json::object();
  std::vector<EntropyDimensionReport> reports;
  for (const auto& c : cases) {
    reports.push_back(entropy_dimension(c.measure, depth));
    double worst = 0.0;
    for (double v : reports.back().values) worst = std::max(worst, std::abs(v - c.expected));
    b.check("proposition1." + c.name, worst <= 1e-12,
            "max |H_k/ln(n_1..n_k) - " + num(c.expected) + "| = " + num(worst));
    results[c.name] = to_json(reports.back());
  }

  const auto flat = square_summability_partials(BaseSequence::constant(2, depth), depth);
  const auto steep = square_summability_partials(BaseSequence::double_exponential(2, depth), depth);
  const auto trend = [&](const std::vector<double>& partials, double* p) {
    std::vector<double> terms(partials.size());
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = partials[i] - (i ? partials[i - 1] : 0.0);
    return series_trend(terms, 1, default_tail_window(depth), p);
  };
  double p_flat = 0, p_steep = 0;
  const auto t_flat = trend(flat, &p_flat), t_steep = trend(steep, &p_steep);
  b.check("proposition1.condition7_constant2_convergent", t_flat == SeriesTrend::Convergent,
          "tail decay exponent " + num(p_flat) + ", partial sum " + num(flat.back()));
  b.check("proposition1.condition7_double_exponential_divergent", t_steep == SeriesTrend::Divergent,
          "tail decay exponent " + num(p_steep) + ", partial sum " + num(steep.back()));

  std::vector<std::string> header{"k"};
  for (const auto& c : cases) header.push_back(c.name);
  header.push_back("condition7_constant2");
  header.push_back("condition7_double_exponential2");
  auto& t = b.table("proposition1", header);
  for (int k = 1; k <= depth; ++k) {
    std::vector<std::string> row{num(k)};
    for (const auto& r : reports) row.push_back(num(r.values[static_cast<std::size_t>(k - 1)]));
    row.push_back(num(flat[static_cast<std::size_t>(k - 1)]));
    row.push_back(num(steep[static_cast<std::size_t>(k - 1)]));
    t.rows.push_back(std::move(row));
  }
  results["condition7_constant2"] = Json{{"trend", to_string(t_flat)}, {"decay_exponent", real_to_json(p_flat)}};
  results["condition7_double_exponential2"] =
      Json{{"trend", to_string(t_steep)}, {"decay_exponent", real_to_json(p_steep)}};
  b.bundle.document["results"] = results;
}

// --- proposition2: T_alpha -------------------------------------------------

void run_proposition2(const ReproduceConfig& cfg, Builder& b) {
  const int depth = cfg.depth;
  const double irrational = std::numbers::sqrt2 - 1.0;
  const auto half = construct_T_alpha(1, 2, depth);
  const auto ex2 = construct_example2(depth);
  int agree = 0;
  for (int k = 1; k <= depth; ++k) agree += half.allowed_digits(k) == ex2.allowed_digits(k);
  b.check("proposition2.half_matches_example2", agree == depth,
          num(agree) + " of " + num(depth) + " levels agree");

  struct Case {
    std::string name;
    DigitRuleSet set;
    double alpha;
  };
  std::vector<Case> cases{{"p1_q3", construct_T_alpha(1, 3, depth), 1.0 / 3.0},
                          {"p1_q2", half, 0.5},
                          {"p2_q3", construct_T_alpha(2, 3, depth), 2.0 / 3.0},
                          {"sqrt2_minus_1", construct_T_alpha_real(irrational, depth), irrational}};

  std::vector<std::string> header{"k"};
  for (const auto& c : cases) header.push_back("critical_exponent_" + c.name);
  auto& t = b.table("proposition2_exponents", header);
  for (int k = 1; k <= depth; ++k) {
    std::vector<std::string> row{num(k)};
    for (const auto& c : cases) row.push_back(num(critical_exponent(c.set, k)));
    t.rows.push_back(std::move(row));
  }

  auto& runs = b.table("proposition2_runs", {"case", "s", "k", "alpha", "log2_merged_run_volume"});
  Json results = Json::object();
  for (const auto& c : cases) {
    const double crit = critical_exponent(c.set, depth);
    if (c.name != "p1_q2")
      b.check("proposition2.critical_exponent_" + c.name, std::abs(crit - c.alpha) <= 0.02,
              "alpha_" + num(depth) + " = " + num(crit) + " vs " + num(c.alpha));
    for (int k = 2; k <= depth; k *= 2) {
      runs.rows.push_back({c.name, num(static_cast<int>(std::log2(k))), num(k), num(c.alpha),
                           num(log2_of(merged_run_cover_volume(c.set, k, c.alpha)))});
    }
    results[c.name] = Json{{"set", to_json(c.set)}, {"critical_exponent", real_to_json(crit)}};
  }
  b.bundle.document["results"] = results;
}

}  // namespace

const char* to_string(ReproduceTarget target) {
  switch (target) {
    case ReproduceTarget::Example1: return "example1";
    case ReproduceTarget::Example2: return "example2";
    case ReproduceTarget::TheoremT: return "theorem_T";
    case ReproduceTarget::Proposition1: return "proposition1";
    case ReproduceTarget::Proposition2: return "proposition2";
  }
  return "unknown";
}

ReproduceTarget reproduce_target_from_string(const std::string& name) {
  for (auto t : {ReproduceTarget::Example1, ReproduceTarget::Example2, ReproduceTarget::TheoremT,
                 ReproduceTarget::Proposition1, ReproduceTarget::Proposition2})
    if (name == to_string(t)) return t;
  throw Error("unknown reproduce target '" + name + "'");
}

int default_depth(ReproduceTarget target) {
  switch (target) {
    case ReproduceTarget::Example1: return 30;
    case ReproduceTarget::Example2: return 5;
    case ReproduceTarget::TheoremT: return 12;
    case ReproduceTarget::Proposition1: return 60;
    case ReproduceTarget::Proposition2: return 64;
  }
  return 1;
}

std::string CsvTable::text() const {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

bool ReportBundle::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string ReportBundle::document_text() const { return document.dump(2) + "\n"; }

std::string ReportBundle::check_lines() const {
  std::string out;
  for (const auto& c : checks) out += (c.pass ? "PASS " : "FAIL ") + c.name + ": " + c.detail + "\n";
  return out;
}

Json to_json(const ReproduceConfig& c) {
  return Json{{"target", to_string(c.target)}, {"depth", c.depth},
              {"C", real_to_json(c.C)},        {"delta", real_to_json(c.delta)},
              {"epsilon", real_to_json(c.epsilon)}, {"split_levels", c.split_levels},
              {"seed", c.seed}};
}

ReportBundle reproduce(const ReproduceConfig& config) {
  ReproduceConfig cfg = config;
  if (cfg.depth == 0) cfg.depth = default_depth(cfg.target);
  if (cfg.depth < 1) throw Error("reproduce: depth must be positive");
  const int limit = cfg.target == ReproduceTarget::Example2 ? 10
                    : cfg.target == ReproduceTarget::TheoremT ? 20
                                                              : 2000;
  if (cfg.depth > limit)
    throw Error("reproduce: depth " + std::to_string(cfg.depth) + " exceeds the feasible limit " +
                std::to_string(limit) + " for " + to_string(cfg.target));
  if (cfg.split_levels < 1 || cfg.split_levels > 10)
    throw Error("reproduce: split_levels must lie in 1..10");

  Builder b;
  b.bundle.document["config"] = to_json(cfg);
  b.bundle.document["version"] = kLibraryVersion;
  switch (cfg.target) {
    case ReproduceTarget::Example1: run_example1(cfg, b); break;
    case ReproduceTarget::Example2: run_example2(cfg, b); break;
    case ReproduceTarget::TheoremT: run_theorem_T(cfg, b); break;
    case ReproduceTarget::Proposition1: run_proposition1(cfg, b); break;
    case ReproduceTarget::Proposition2: run_proposition2(cfg, b); break;
  }
  Json checks = Json::array();
  for (const auto& c : b.bundle.checks)
    checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  b.bundle.document["checks"] = checks;
  b.bundle.document["all_pass"] = b.bundle.all_pass();
  Json tables = Json::array();
  for (const auto& t : b.bundle.tables) tables.push_back(t.name + ".csv");
  b.bundle.document["tables"] = tables;
  return std::move(b.bundle);
}

}  // namespace cantor
