#pragma once

// JSON shapes for base sequences, digit rule sets, product measures and reports.
//
//   BaseSequence   {"kind":"power","base":4,"max_depth":64}
//                  {"kind":"constant","value":2,"max_depth":100}
//                  {"kind":"double_exponential","base":2,"max_depth":12}
//                  {"kind":"explicit","values":[2,3,"1208925819614629174706176"]}
//   DigitRuleSet   {"bases":{...},"levels":[{"k":1,"intervals":[[0,1]]},...],"special_levels":[...]}
//                  or a named rule: {"rule":"example1","depth":40},
//                  {"rule":"t_alpha","p":1,"q":3,"depth":64}, {"rule":"full","bases":{...},"depth":8},
//                  {"rule":"T","bases":{...},"kj":[5,8,11],"depth":12} or with "C","delta","epsilon".
//   ProductMeasure {"uniform_on":<DigitRuleSet>}
//                  {"bases":{...},"levels":[{"k":1,"uniform":[[0,1]]},{"k":2,"p":["1/2","1/2",0,0]}]}
//                  {"rule":"example2_split","m":3,"j":5,"depth":9}
//
// Integers that do not fit in 64 bits travel as decimal strings; rationals as "a/b".
// Doubles are rounded to 15 significant digits; non-finite values become null.

#include "json.hpp"

#include "cantor/dimension.hpp"
#include "cantor/faithfulness.hpp"
#include "cantor/measure.hpp"
#include "cantor/sets.hpp"

namespace cantor {

using Json = nlohmann::json;

Json integer_to_json(const Integer& n);
Integer integer_from_json(const Json& j);
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json real_to_json(double x);

Json to_json(const BaseSequence& bases);
BaseSequence base_sequence_from_json(const Json& j);

Json to_json(const IntervalUnion& u);
IntervalUnion interval_union_from_json(const Json& j);

/// Named rules stay compressed unless `expand` is set.
Json to_json(const DigitRuleSet& set, bool expand = false);
DigitRuleSet digit_rule_set_from_json(const Json& j);

Json to_json(const ProductMeasure& measure);
ProductMeasure product_measure_from_json(const Json& j);

Json to_json(const DigitWord& word);
Json to_json(const Cylinder& cylinder);
Json to_json(const FaithfulnessReport& report);
Json to_json(const SubsequenceSelection& selection);
Json to_json(const CoveringReport& report);
Json to_json(const EntropyDimensionReport& report);
Json to_json(const MassCertificate& cert);
Json to_json(const TBounds& bounds);

/// Inline JSON text (starting with '{' or '[') or a path to a JSON file.
Json load_json_argument(const std::string& text_or_path);

}  // namespace cantor
