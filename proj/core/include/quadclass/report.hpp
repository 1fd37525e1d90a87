#ifndef QUADCLASS_REPORT_HPP
#define QUADCLASS_REPORT_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "quadclass/theorems.hpp"

namespace quadclass::report {

inline constexpr const char* kToolName = "quadclass";
inline constexpr const char* kToolVersion = "0.1.0";

enum class Format { json, csv, text };

const char* format_name(Format f);
std::optional<Format> format_from_name(const std::string& name);

// Everything a sweep needs, as read from `key = value` config lines
// and/or command-line flags (flags win).
struct SweepConfig {
  theorems::TheoremId theorem = theorems::TheoremId::T5;
  std::map<std::string, std::string> range_specs;  // raw axis strings, e.g. "3..99 odd"
  bool e_auto = false;
  theorems::Budgets budgets;
  Format format = Format::text;
  std::string out_path;  // empty = stdout
  unsigned workers = 1;
  bool strict = false;
};

// Parses "lo..hi [odd|even] [step N]" or a single value.
theorems::GridRange parse_range_spec(const std::string& spec);

SweepConfig parse_config_text(const std::string& text);
SweepConfig parse_config_file(const std::string& path);

theorems::GridSpec grid_from_config(const SweepConfig& config);

// Serialized reports carry only what determines the math (theorem,
// ranges, budgets, strict); workers and output routing never change a
// byte of the report.
std::string to_json(const theorems::SweepReport& report, const SweepConfig& config);
std::string to_csv(const theorems::SweepReport& report);
std::string to_text(const theorems::SweepReport& report);
std::string render(const theorems::SweepReport& report, const SweepConfig& config, Format f);

// Inverse of to_json, for report tooling and the round-trip tests.
std::pair<SweepConfig, theorems::SweepReport> from_json(const std::string& json_text);

// 0 on success; 1 when anything failed (or was skipped, under strict).
int exit_code_for(const theorems::SweepSummary& summary, bool strict);

}  // namespace quadclass::report

#endif
