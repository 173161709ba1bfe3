#pragma once

// End-to-end reproduction runs. Each target builds its sets and measures,
// tabulates volumes, exponents and certificates, and records one check per claim.
// A bundle is a pure function of its config: no clocks, no hidden randomness.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cantor/serialization.hpp"

namespace cantor {

inline constexpr const char* kLibraryVersion = "0.1.0";

enum class ReproduceTarget { Example1, Example2, TheoremT, Proposition1, Proposition2 };
const char* to_string(ReproduceTarget target);
ReproduceTarget reproduce_target_from_string(const std::string& name);

struct ReproduceConfig {
  ReproduceTarget target = ReproduceTarget::Example1;
  int depth = 0;             // 0 picks the target's default; example2 reads it as the special-level count
  double C = 1.0;            // theorem_T
  double delta = 0.1;        // theorem_T
  double epsilon = 0.1;      // theorem_T
  int split_levels = 8;      // example2: m = 1..split_levels
  std::uint64_t seed = 1;    // words used for Billingsley ratios
};

int default_depth(ReproduceTarget target);

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CsvTable {
  std::string name;  // file stem
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string text() const;
};

struct ReportBundle {
  Json document;
  std::vector<CsvTable> tables;
  std::vector<Check> checks;

  bool all_pass() const;
  std::string document_text() const;
  /// "PASS name: detail" / "FAIL name: detail", one per line.
  std::string check_lines() const;
};

ReportBundle reproduce(const ReproduceConfig& config);

Json to_json(const ReproduceConfig& config);

}  // namespace cantor
