// cantor: command-line front end for Cantor series expansions, faithfulness
// ratios, digit-restricted sets, covering volumes and product measures.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cantor/reproduce.hpp"

namespace fs = std::filesystem;
using namespace cantor;

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::vector<double> parse_alpha_grid(const std::string& spec) {
  if (spec.find(',') == std::string::npos) {
    try {
      std::size_t used = 0;
      const int points = std::stoi(spec, &used);
      if (used == spec.size() && spec.find('.') == std::string::npos) return alpha_grid(points);
    } catch (const std::exception&) {
    }
  }
  std::vector<double> out;
  std::stringstream in(spec);
  for (std::string item; std::getline(in, item, ',');) out.push_back(parse_rational(item).get_d());
  return out;
}

CoveringKind parse_covering(const std::string& name) {
  if (name == "cylinders") return CoveringKind::Cylinders;
  if (name == "runs") return CoveringKind::MergedRuns;
  if (name == "dp") return CoveringKind::DpOptimal;
  throw Error("unknown covering '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cantor series expansions, faithful coverings and singular product measures"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kLibraryVersion);

  // encode
  std::string bases_arg, x_arg, out_path, csv_path, format = "json";
  int depth = 0;
  auto* encode_cmd = app.add_subcommand("encode", "Digits of a rational x in [0,1)");
  encode_cmd->add_option("--bases", bases_arg, "Base sequence JSON (inline or file)")->required();
  encode_cmd->add_option("--x", x_arg, "Rational such as 5/8 or 0.625")->required();
  encode_cmd->add_option("--depth", depth, "Number of digits")->required();
  encode_cmd->add_option("--out", out_path, "Output file (default stdout)");

  // decode
  std::string digits_arg;
  auto* decode_cmd = app.add_subcommand("decode", "Cylinder of a digit word");
  decode_cmd->add_option("--bases", bases_arg, "Base sequence JSON")->required();
  decode_cmd->add_option("--digits", digits_arg, "Comma-separated digits; empty for rank 0");
  decode_cmd->add_option("--out", out_path, "Output file (default stdout)");

  // faithfulness
  double tol = 0.01;
  auto* faith_cmd = app.add_subcommand("faithfulness", "Ratio criterion on a finite prefix");
  faith_cmd->add_option("--bases", bases_arg, "Base sequence JSON")->required();
  faith_cmd->add_option("--depth", depth, "K")->required();
  faith_cmd->add_option("--tol", tol, "Verdict tolerance");
  faith_cmd->add_option("--out", out_path, "JSON report file (default stdout)");
  faith_cmd->add_option("--csv", csv_path, "CSV of k, r_k, square-sum partial");
  faith_cmd->add_option("--format", format, "json|csv for stdout")->check(CLI::IsMember({"json", "csv"}));

  // construct
  std::string rule = "example1";
  long p = 1, q = 2;
  double alpha_real = 0.5, C = 1.0, delta = 0.1, epsilon = 0.1;
  bool expand = false;
  auto* construct_cmd = app.add_subcommand("construct", "Build a digit-restricted set");
  construct_cmd->add_option("--rule", rule, "example1|example2|t_alpha|t_alpha_real|T|full")
      ->check(CLI::IsMember({"example1", "example2", "t_alpha", "t_alpha_real", "T", "full"}));
  construct_cmd->add_option("--depth", depth, "Number of levels")->required();
  construct_cmd->add_option("--p", p, "Exponent numerator (t_alpha)");
  construct_cmd->add_option("--q", q, "Exponent denominator (t_alpha)");
  construct_cmd->add_option("--alpha", alpha_real, "Exponent (t_alpha_real)");
  construct_cmd->add_option("--bases", bases_arg, "Base sequence JSON (T, full)");
  construct_cmd->add_option("--C", C, "Limsup constant (T)");
  construct_cmd->add_option("--delta", delta, "delta in (0, C) (T)");
  construct_cmd->add_option("--epsilon", epsilon, "epsilon > 0 (T)");
  construct_cmd->add_flag("--expand", expand, "List every level explicitly");
  construct_cmd->add_option("--out", out_path, "Output file (default stdout)");

  // dimension
  std::string set_arg, grid_arg = "512", covering = "cylinders";
  auto* dim_cmd = app.add_subcommand("dimension", "Alpha-volumes of a covering");
  dim_cmd->add_option("--set", set_arg, "DigitRuleSet JSON")->required();
  dim_cmd->add_option("--alpha-grid", grid_arg, "Point count, or comma-separated alphas");
  dim_cmd->add_option("--depth", depth, "Rank k")->required();
  dim_cmd->add_option("--covering", covering, "cylinders|runs|dp")
      ->check(CLI::IsMember({"cylinders", "runs", "dp"}));
  dim_cmd->add_option("--out", out_path, "JSON CoveringReport file (default stdout)");
  dim_cmd->add_option("--csv", csv_path, "CSV of alpha, log_volume, log2_volume");
  dim_cmd->add_option("--format", format, "json|csv for stdout")->check(CLI::IsMember({"json", "csv"}));

  // measure
  std::string spec_arg;
  int entropy_depth = 0, sample_count = 0;
  std::uint64_t seed = 1;
  auto* measure_cmd = app.add_subcommand("measure", "Entropy dimension or samples of a product measure");
  measure_cmd->add_option("--spec", spec_arg, "ProductMeasure JSON")->required();
  measure_cmd->add_option("--entropy", entropy_depth, "Report entropy dimension up to K");
  measure_cmd->add_option("--sample", sample_count, "Number of samples");
  measure_cmd->add_option("--seed", seed, "Generator seed (mt19937_64)");
  measure_cmd->add_option("--depth", depth, "Digits per sample");
  measure_cmd->add_option("--out", out_path, "Output file (default stdout)");
  measure_cmd->add_option("--csv", csv_path, "CSV of k, H_k, dimension value, condition-7 partial");

  // reproduce
  std::string target = "example1";
  ReproduceConfig rc;
  auto* repro_cmd = app.add_subcommand("reproduce", "Run a full reproduction bundle");
  repro_cmd->add_option("--target", target, "example1|example2|theorem_T|proposition1|proposition2")
      ->check(CLI::IsMember({"example1", "example2", "theorem_T", "proposition1", "proposition2"}));
  repro_cmd->add_option("--depth", rc.depth, "Depth (example2: number of special levels)");
  repro_cmd->add_option("--C", rc.C, "theorem_T limsup constant");
  repro_cmd->add_option("--delta", rc.delta, "theorem_T delta");
  repro_cmd->add_option("--epsilon", rc.epsilon, "theorem_T epsilon");
  repro_cmd->add_option("--splits", rc.split_levels, "example2: split levels m = 1..M");
  repro_cmd->add_option("--seed", rc.seed, "Seed for sampled words");
  repro_cmd->add_option("--out", out_path, "Bundle directory (default: JSON to stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*encode_cmd) {
      const auto bases = base_sequence_from_json(load_json_argument(bases_arg));
      const auto word = encode(parse_rational(x_arg), bases, depth);
      write_text(out_path, dump(to_json(cylinder_of(word))));
    } else if (*decode_cmd) {
      const auto bases = base_sequence_from_json(load_json_argument(bases_arg));
      std::vector<Integer> digits;
      std::stringstream in(digits_arg);
      for (std::string item; std::getline(in, item, ',');)
        if (!item.empty()) digits.push_back(parse_integer(item));
      const auto cyl = cylinder_of(DigitWord(bases, std::move(digits)));
      auto j = to_json(cyl);
      j["value"] = rational_to_json(cyl.left);
      write_text(out_path, dump(j));
    } else if (*faith_cmd) {
      const auto bases = base_sequence_from_json(load_json_argument(bases_arg));
      const auto report = faithfulness_report(bases, depth, tol);
      CsvTable t{"faithfulness", {"k", "r_k", "square_sum_partial"}, {}};
      for (int k = 1; k <= depth; ++k) {
        const auto i = static_cast<std::size_t>(k);
        t.rows.push_back({std::to_string(k), k >= 2 ? format15(report.ratios[i - 2]) : "",
                          format15(report.square_sum_partials[i - 1])});
      }
      if (!csv_path.empty()) write_text(csv_path, t.text());
      write_text(out_path, format == "csv" ? t.text() : dump(to_json(report)));
    } else if (*construct_cmd) {
      Json out;
      if (rule == "example1") out["set"] = to_json(construct_example1(depth), expand);
      else if (rule == "example2") out["set"] = to_json(construct_example2(depth), expand);
      else if (rule == "t_alpha") out["set"] = to_json(construct_T_alpha(p, q, depth), expand);
      else if (rule == "t_alpha_real") out["set"] = to_json(construct_T_alpha_real(alpha_real, depth), expand);
      else {
        if (bases_arg.empty()) throw Error("--bases is required for rule " + rule);
        const auto bases = base_sequence_from_json(load_json_argument(bases_arg));
        if (rule == "full") {
          out["set"] = to_json(full_set(bases, depth), expand);
        } else {
          const auto sel = select_subsequences(bases, C, delta, epsilon, depth);
          const auto problems = verify_selection(bases, sel);
          if (!problems.empty()) throw Error("selection failed verification: " + problems);
          out["selection"] = to_json(sel);
          out["set"] = to_json(construct_T(bases, sel), expand);
        }
      }
      write_text(out_path, dump(out));
    } else if (*dim_cmd) {
      const auto set = digit_rule_set_from_json(load_json_argument(set_arg));
      const auto report = covering_report(set, depth, parse_covering(covering), parse_alpha_grid(grid_arg));
      CsvTable t{"dimension", {"alpha", "log_volume", "log2_volume"}, {}};
      const auto log2v = report.log2_volumes();
      for (std::size_t i = 0; i < report.alphas.size(); ++i)
        t.rows.push_back({format15(report.alphas[i]), format15(report.log_volumes[i]), format15(log2v[i])});
      if (!csv_path.empty()) write_text(csv_path, t.text());
      write_text(out_path, format == "csv" ? t.text() : dump(to_json(report)));
    } else if (*measure_cmd) {
      const auto measure = product_measure_from_json(load_json_argument(spec_arg));
      if (entropy_depth > 0) {
        const auto report = entropy_dimension(measure, entropy_depth);
        const auto H = entropy_sequence(measure, entropy_depth);
        CsvTable t{"entropy", {"k", "H_k", "dimension_value", "condition7_partial"}, {}};
        for (std::size_t i = 0; i < H.size(); ++i)
          t.rows.push_back({std::to_string(i + 1), format15(H[i]), format15(report.values[i]),
                            format15(report.condition7_partials[i])});
        if (!csv_path.empty()) write_text(csv_path, t.text());
        write_text(out_path, dump(to_json(report)));
      } else if (sample_count > 0) {
        if (depth < 1) throw Error("--depth is required with --sample");
        std::mt19937_64 gen(seed);
        CsvTable t{"samples", {"index", "x", "x_exact"}, {}};
        for (int i = 0; i < sample_count; ++i) {
          const auto x = decode(sample(measure, gen, depth));
          t.rows.push_back({std::to_string(i), format15(x.get_d()), x.get_str()});
        }
        write_text(out_path, t.text());
      } else {
        throw Error("measure: pass --entropy K or --sample N");
      }
    } else if (*repro_cmd) {
      rc.target = reproduce_target_from_string(target);
      const auto bundle = reproduce(rc);
      if (out_path.empty()) {
        std::cout << bundle.document_text();
        std::cerr << bundle.check_lines();
      } else {
        fs::create_directories(out_path);
        write_text((fs::path(out_path) / "bundle.json").string(), bundle.document_text());
        for (const auto& t : bundle.tables)
          write_text((fs::path(out_path) / (t.name + ".csv")).string(), t.text());
        std::cout << bundle.check_lines();
      }
      return bundle.all_pass() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
