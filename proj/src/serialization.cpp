#include "cantor/serialization.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace cantor {

Json integer_to_json(const Integer& n) {
  if (n.fits_slong_p()) return Json(n.get_si());
  return Json(n.get_str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_unsigned()) return Integer(static_cast<unsigned long>(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw Error("expected an integer, got " + j.dump());
}

Json rational_to_json(const Rational& r) {
  if (r.get_den() == 1) return integer_to_json(r.get_num());
  return Json(r.get_str());
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(integer_from_json(j));
  if (j.is_number_float()) return Rational(j.get<double>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error("expected a rational, got " + j.dump());
}

Json real_to_json(double x) {
  if (!std::isfinite(x)) return Json(nullptr);
  return Json(round15(x));
}

namespace {

Json reals_to_json(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(real_to_json(x));
  return out;
}

int depth_field(const Json& j, const char* name = "depth") {
  if (!j.contains(name)) throw Error(std::string("missing field '") + name + "'");
  return j.at(name).get<int>();
}

}  // namespace

Json to_json(const BaseSequence& bases) {
  Json j;
  j["kind"] = to_string(bases.kind());
  switch (bases.kind()) {
    case BaseSequence::Kind::Explicit: {
      Json values = Json::array();
      for (const auto& v : bases.explicit_list()) values.push_back(integer_to_json(v));
      j["values"] = values;
      return j;
    }
    case BaseSequence::Kind::Constant:
      j["value"] = integer_to_json(bases.parameter());
      break;
    default:
      j["base"] = integer_to_json(bases.parameter());
  }
  j["max_depth"] = bases.max_depth();
  return j;
}

BaseSequence base_sequence_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw Error("base sequence JSON needs a 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "explicit") {
    std::vector<Integer> values;
    for (const auto& v : j.at("values")) values.push_back(integer_from_json(v));
    return BaseSequence::explicit_values(std::move(values));
  }
  const int depth = depth_field(j, "max_depth");
  if (kind == "constant")
    return BaseSequence::constant(integer_from_json(j.contains("value") ? j.at("value") : j.at("base")),
                                  depth);
  if (kind == "power") return BaseSequence::power(integer_from_json(j.at("base")), depth);
  if (kind == "double_exponential")
    return BaseSequence::double_exponential(integer_from_json(j.at("base")), depth);
  throw Error("unknown base sequence kind '" + kind + "'");
}

Json to_json(const IntervalUnion& u) {
  Json out = Json::array();
  for (const auto& [first, last] : u.ranges())
    out.push_back(Json::array({integer_to_json(first), integer_to_json(last)}));
  return out;
}

IntervalUnion interval_union_from_json(const Json& j) {
  std::vector<IntervalUnion::Range> ranges;
  for (const auto& r : j) {
    if (!r.is_array() || r.size() != 2) throw Error("interval must be [first, last]");
    ranges.emplace_back(integer_from_json(r[0]), integer_from_json(r[1]));
  }
  return IntervalUnion(std::move(ranges));
}

Json to_json(const DigitRuleSet& set, bool expand) {
  const auto& o = set.origin();
  if (!expand) {
    if (o.rule == "example1" || o.rule == "example2")
      return Json{{"rule", o.rule}, {"depth", set.depth()}};
    if (o.rule == "t_alpha")
      return Json{{"rule", o.rule}, {"p", o.p}, {"q", o.q}, {"depth", set.depth()}};
    if (o.rule == "t_alpha_real")
      return Json{{"rule", o.rule}, {"alpha", o.alpha}, {"depth", set.depth()}};
    if (o.rule == "full")
      return Json{{"rule", o.rule}, {"bases", to_json(set.bases())}, {"depth", set.depth()}};
    if (o.rule == "T")
      return Json{{"rule", o.rule},
                  {"bases", to_json(set.bases())},
                  {"kj", set.special_levels()},
                  {"depth", set.depth()}};
  }
  Json levels = Json::array();
  for (int k = 1; k <= set.depth(); ++k)
    levels.push_back(Json{{"k", k}, {"intervals", to_json(set.allowed_digits(k))}});
  Json j{{"bases", to_json(set.bases())}, {"levels", levels}};
  if (!set.special_levels().empty()) j["special_levels"] = set.special_levels();
  return j;
}

DigitRuleSet digit_rule_set_from_json(const Json& j) {
  if (!j.is_object()) throw Error("digit rule set JSON must be an object");
  if (j.contains("rule")) {
    const auto rule = j.at("rule").get<std::string>();
    if (rule == "example1") return construct_example1(depth_field(j));
    if (rule == "example2") return construct_example2(depth_field(j));
    if (rule == "t_alpha")
      return construct_T_alpha(j.at("p").get<long>(), j.at("q").get<long>(), depth_field(j));
    if (rule == "t_alpha_real") return construct_T_alpha_real(j.at("alpha").get<double>(), depth_field(j));
    if (rule == "full") return full_set(base_sequence_from_json(j.at("bases")), depth_field(j));
    if (rule == "T") {
      const auto bases = base_sequence_from_json(j.at("bases"));
      SubsequenceSelection sel;
      if (j.contains("kj")) {
        sel.depth = depth_field(j);
        sel.kj = j.at("kj").get<std::vector<int>>();
        std::sort(sel.kj.begin(), sel.kj.end());
      } else {
        sel = select_subsequences(bases, j.at("C").get<double>(), j.at("delta").get<double>(),
                                  j.at("epsilon").get<double>(), depth_field(j));
      }
      return construct_T(bases, sel);
    }
    throw Error("unknown rule '" + rule + "'");
  }
  const auto bases = base_sequence_from_json(j.at("bases"));
  const auto& levels_json = j.at("levels");
  std::vector<IntervalUnion> levels(levels_json.size());
  for (std::size_t i = 0; i < levels_json.size(); ++i) {
    const auto& entry = levels_json[i];
    const int k = entry.contains("k") ? entry.at("k").get<int>() : static_cast<int>(i) + 1;
    if (k != static_cast<int>(i) + 1) throw Error("levels must be listed in order k = 1, 2, ...");
    levels[i] = interval_union_from_json(entry.at("intervals"));
  }
  std::vector<int> special;
  if (j.contains("special_levels")) special = j.at("special_levels").get<std::vector<int>>();
  return DigitRuleSet(bases, std::move(levels), std::move(special));
}

Json to_json(const ProductMeasure& measure) {
  Json levels = Json::array();
  for (int k = 1; k <= measure.depth(); ++k) {
    const auto& level = measure.level(k);
    if (level.is_uniform()) {
      levels.push_back(Json{{"k", k}, {"uniform", to_json(level.uniform_support())}});
    } else {
      Json p = Json::array();
      for (const auto& x : level.probabilities()) p.push_back(rational_to_json(x));
      levels.push_back(Json{{"k", k}, {"p", p}});
    }
  }
  return Json{{"bases", to_json(measure.bases())}, {"levels", levels}};
}

ProductMeasure product_measure_from_json(const Json& j) {
  if (!j.is_object()) throw Error("product measure JSON must be an object");
  if (j.contains("uniform_on")) return uniform_on(digit_rule_set_from_json(j.at("uniform_on")));
  if (j.contains("rule")) {
    const auto rule = j.at("rule").get<std::string>();
    if (rule == "example2_split")
      return example2_split_measure(j.at("m").get<int>(), j.at("j").get<long>(), depth_field(j));
    if (rule == "degenerate")
      return degenerate(base_sequence_from_json(j.at("bases")), depth_field(j));
    if (rule == "uniform_full")
      return uniform_full(base_sequence_from_json(j.at("bases")), depth_field(j));
    throw Error("unknown measure rule '" + rule + "'");
  }
  const auto bases = base_sequence_from_json(j.at("bases"));
  std::vector<LevelDistribution> levels;
  for (const auto& entry : j.at("levels")) {
    if (entry.contains("uniform")) {
      levels.push_back(LevelDistribution::uniform(interval_union_from_json(entry.at("uniform"))));
    } else {
      std::vector<Rational> p;
      for (const auto& x : entry.at("p")) p.push_back(rational_from_json(x));
      levels.push_back(LevelDistribution::explicit_probabilities(std::move(p)));
    }
  }
  return ProductMeasure(bases, std::move(levels));
}

Json to_json(const DigitWord& word) {
  Json digits = Json::array();
  for (const auto& d : word.digits()) digits.push_back(integer_to_json(d));
  return digits;
}

Json to_json(const Cylinder& c) {
  return Json{{"digits", to_json(c.word)},
              {"rank", c.word.rank()},
              {"left", rational_to_json(c.left)},
              {"length", rational_to_json(c.length)},
              {"log_length", real_to_json(c.log_length)}};
}

Json to_json(const FaithfulnessReport& r) {
  return Json{{"depth", r.depth},
              {"tol", real_to_json(r.tol)},
              {"ratios_from_k", 2},
              {"ratios", reals_to_json(r.ratios)},
              {"tail_window", r.tail_window},
              {"limsup_estimate", real_to_json(r.limsup_estimate)},
              {"extrapolated_limit", real_to_json(r.extrapolated_limit)},
              {"verdict", to_string(r.verdict)},
              {"square_sum_partials", reals_to_json(r.square_sum_partials)},
              {"square_sum_trend", to_string(r.square_sum_trend)},
              {"square_sum_decay_exponent", real_to_json(r.square_sum_decay_exponent)}};
}

Json to_json(const SubsequenceSelection& s) {
  return Json{{"C", real_to_json(s.C)}, {"delta", real_to_json(s.delta)},
              {"epsilon", real_to_json(s.epsilon)}, {"depth", s.depth},
              {"N0", s.N0}, {"N1", s.N1}, {"N2", s.N2}, {"ki", s.ki}, {"kj", s.kj}};
}

Json to_json(const CoveringReport& r) {
  return Json{{"depth", r.depth},
              {"covering_kind", to_string(r.kind)},
              {"piece_count", integer_to_json(r.piece_count)},
              {"alphas", reals_to_json(r.alphas)},
              {"log_volumes", reals_to_json(r.log_volumes)},
              {"log2_volumes", reals_to_json(r.log2_volumes())},
              {"critical_exponent", real_to_json(r.critical_exponent)}};
}

Json to_json(const EntropyDimensionReport& r) {
  return Json{{"values", reals_to_json(r.values)},
              {"tail_window", r.tail_window},
              {"liminf_estimate", real_to_json(r.liminf_estimate)},
              {"limsup_estimate", real_to_json(r.limsup_estimate)},
              {"condition7_partials", reals_to_json(r.condition7_partials)},
              {"condition7_trend", to_string(r.condition7_trend)},
              {"condition7_decay_exponent", real_to_json(r.condition7_decay_exponent)}};
}

Json to_json(const MassCertificate& c) {
  return Json{{"holds", c.holds},
              {"exact", c.exact},
              {"ranks_checked", c.ranks_checked},
              {"equality_ranks", c.equality_ranks},
              {"first_failing_rank", c.first_failing_rank},
              {"worst_rank", c.worst_rank},
              {"worst_log_ratio", real_to_json(c.worst_log_ratio)}};
}

Json to_json(const TBounds& b) {
  return Json{{"upper", real_to_json(b.upper)},
              {"lower", real_to_json(b.lower)},
              {"lower_delta", real_to_json(b.lower_delta)}};
}

Json load_json_argument(const std::string& text_or_path) {
  const auto first = text_or_path.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text_or_path[first] == '{' || text_or_path[first] == '['))
    return Json::parse(text_or_path);
  std::ifstream in(text_or_path);
  if (!in) throw Error("cannot open JSON file '" + text_or_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return Json::parse(buf.str());
}

}  // namespace cantor
