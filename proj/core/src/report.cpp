#include "quadclass/report.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace quadclass::report {

using json = nlohmann::ordered_json;
using theorems::TheoremVerdict;
using theorems::VerdictStatus;

const char* format_name(Format f) {
  switch (f) {
    case Format::json: return "json";
    case Format::csv: return "csv";
    case Format::text: return "text";
  }
  return "?";
}

std::optional<Format> format_from_name(const std::string& name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "text") return Format::text;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Config parsing

theorems::GridRange parse_range_spec(const std::string& spec) {
  theorems::GridRange r;
  std::istringstream in(spec);
  std::string head;
  if (!(in >> head)) throw std::invalid_argument("empty range spec");
  auto dots = head.find("..");
  try {
    if (dots == std::string::npos) {
      r.lo = Int(head);
      r.hi = r.lo;
    } else {
      r.lo = Int(head.substr(0, dots));
      r.hi = Int(head.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("bad range spec '" + spec + "'");
  }
  std::string word;
  while (in >> word) {
    if (word == "odd") {
      r.parity = theorems::GridRange::Parity::odd;
    } else if (word == "even") {
      r.parity = theorems::GridRange::Parity::even;
    } else if (word == "step") {
      std::string v;
      if (!(in >> v)) throw std::invalid_argument("range spec: step needs a value");
      r.step = Int(v);
    } else {
      throw std::invalid_argument("range spec: unknown token '" + word + "'");
    }
  }
  return r;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("config: bad boolean for '" + key + "': " + v);
}

const std::array<std::string, 6> kAxisKeys = {"k", "n", "q", "e", "l", "x"};

}  // namespace

SweepConfig parse_config_text(const std::string& text) {
  SweepConfig cfg;
  bool have_theorem = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected 'key = value', got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));

    if (key == "theorem") {
      auto id = theorems::theorem_from_name(val);
      if (!id) throw std::invalid_argument("config: unknown theorem '" + val + "'");
      cfg.theorem = *id;
      have_theorem = true;
    } else if (std::find(kAxisKeys.begin(), kAxisKeys.end(), key) != kAxisKeys.end()) {
      if (key == "e" && val == "auto") {
        cfg.e_auto = true;
      } else {
        parse_range_spec(val);  // validate eagerly
        cfg.range_specs[key] = val;
      }
    } else if (key == "budget-factor") {
      cfg.budgets.factor = Int(val);
    } else if (key == "budget-disc") {
      cfg.budgets.disc = Int(val);
    } else if (key == "witness-bound") {
      cfg.budgets.witness = Int(val);
    } else if (key == "format") {
      auto f = format_from_name(val);
      if (!f) throw std::invalid_argument("config: unknown format '" + val + "'");
      cfg.format = *f;
    } else if (key == "out") {
      cfg.out_path = val;
    } else if (key == "workers") {
      cfg.workers = static_cast<unsigned>(std::stoul(val));
    } else if (key == "strict") {
      cfg.strict = parse_bool(val, key);
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  if (!have_theorem) throw std::invalid_argument("config: missing 'theorem'");
  return cfg;
}

SweepConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

theorems::GridSpec grid_from_config(const SweepConfig& config) {
  theorems::GridSpec grid;
  grid.theorem = config.theorem;
  grid.e_auto = config.e_auto;
  for (const auto& [key, spec] : config.range_specs)
    grid.ranges[key] = parse_range_spec(spec);
  return grid;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json verdict_to_json(const TheoremVerdict& v) {
  json out;
  out["theorem"] = theorems::theorem_name(v.theorem);
  json params = json::object();
  for (const auto& [name, value] : v.params) params[name] = value.str();
  out["params"] = params;
  if (v.decomposition) {
    out["m"] = v.decomposition->m.str();
    out["a"] = v.decomposition->a.str();
    out["d"] = v.decomposition->d.str();
  }
  out["case"] = v.case_label;
  out["expected_divisor"] = v.expected_divisor.str();
  if (v.h) out["h"] = v.h->str();
  if (v.order_s) out["order_s"] = v.order_s->str();
  out["order_exception_allowed"] = v.order_exception_allowed;
  out["status"] = theorems::status_name(v.status);
  out["pass"] = v.pass;
  out["notes"] = v.notes;
  return out;
}

TheoremVerdict verdict_from_json(const json& j) {
  TheoremVerdict v;
  auto id = theorems::theorem_from_name(j.at("theorem").get<std::string>());
  if (!id) throw std::invalid_argument("report: unknown theorem in verdict");
  v.theorem = *id;
  for (const auto& [name, value] : j.at("params").items())
    v.params.emplace_back(name, Int(value.get<std::string>()));
  if (j.contains("m")) {
    arith::SquarefreeDecomposition dec;
    dec.m = Int(j.at("m").get<std::string>());
    dec.a = Int(j.at("a").get<std::string>());
    dec.d = Int(j.at("d").get<std::string>());
    v.decomposition = dec;
  }
  v.case_label = j.at("case").get<std::string>();
  v.expected_divisor = Int(j.at("expected_divisor").get<std::string>());
  if (j.contains("h")) v.h = Int(j.at("h").get<std::string>());
  if (j.contains("order_s")) v.order_s = Int(j.at("order_s").get<std::string>());
  v.order_exception_allowed = j.at("order_exception_allowed").get<bool>();
  std::string status = j.at("status").get<std::string>();
  for (VerdictStatus s : {VerdictStatus::Pass, VerdictStatus::Fail, VerdictStatus::NotApplicable,
                          VerdictStatus::Excluded, VerdictStatus::Skipped}) {
    if (status == theorems::status_name(s)) v.status = s;
  }
  v.pass = j.at("pass").get<bool>();
  v.notes = j.at("notes").get<std::string>();
  return v;
}

}  // namespace

std::string to_json(const theorems::SweepReport& report, const SweepConfig& config) {
  json out;
  out["meta"] = {{"tool", kToolName}, {"version", kToolVersion}, {"schema", "1"}};

  json cfg;
  cfg["theorem"] = theorems::theorem_name(config.theorem);
  json ranges = json::object();
  for (const auto& [key, spec] : config.range_specs) ranges[key] = spec;
  cfg["ranges"] = ranges;
  cfg["e_auto"] = config.e_auto;
  cfg["budgets"] = {{"factor", config.budgets.factor.str()},
                    {"disc", config.budgets.disc.str()},
                    {"witness", config.budgets.witness.str()}};
  cfg["strict"] = config.strict;
  out["config"] = cfg;

  json verdicts = json::array();
  for (const auto& v : report.verdicts) verdicts.push_back(verdict_to_json(v));
  out["verdicts"] = verdicts;

  const auto& s = report.summary;
  json summary;
  summary["points"] = std::to_string(s.points);
  summary["pass"] = std::to_string(s.passed);
  summary["fail"] = std::to_string(s.failed);
  summary["not_applicable"] = std::to_string(s.not_applicable);
  summary["excluded"] = std::to_string(s.excluded);
  summary["skipped"] = std::to_string(s.skipped);
  summary["invariant_violations"] = s.invariant_violations;
  summary["all_ok"] = s.all_ok();
  out["summary"] = summary;

  return out.dump(2) + "\n";
}

std::pair<SweepConfig, theorems::SweepReport> from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  SweepConfig cfg;
  const json& jc = j.at("config");
  auto id = theorems::theorem_from_name(jc.at("theorem").get<std::string>());
  if (!id) throw std::invalid_argument("report: unknown theorem in config");
  cfg.theorem = *id;
  for (const auto& [key, spec] : jc.at("ranges").items())
    cfg.range_specs[key] = spec.get<std::string>();
  cfg.e_auto = jc.at("e_auto").get<bool>();
  cfg.budgets.factor = Int(jc.at("budgets").at("factor").get<std::string>());
  cfg.budgets.disc = Int(jc.at("budgets").at("disc").get<std::string>());
  cfg.budgets.witness = Int(jc.at("budgets").at("witness").get<std::string>());
  cfg.strict = jc.at("strict").get<bool>();

  theorems::SweepReport report;
  report.grid = grid_from_config(cfg);
  report.budgets = cfg.budgets;
  for (const auto& jv : j.at("verdicts")) report.verdicts.push_back(verdict_from_json(jv));

  const json& js = j.at("summary");
  report.summary.points = std::stoull(js.at("points").get<std::string>());
  report.summary.passed = std::stoull(js.at("pass").get<std::string>());
  report.summary.failed = std::stoull(js.at("fail").get<std::string>());
  report.summary.not_applicable = std::stoull(js.at("not_applicable").get<std::string>());
  report.summary.excluded = std::stoull(js.at("excluded").get<std::string>());
  report.summary.skipped = std::stoull(js.at("skipped").get<std::string>());
  report.summary.invariant_violations =
      js.at("invariant_violations").get<std::vector<std::string>>();
  return {cfg, report};
}

// ---------------------------------------------------------------------------
// CSV / text

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string params_compact(const TheoremVerdict& v) {
  std::string out;
  for (const auto& [name, value] : v.params) {
    if (!out.empty()) out += ";";
    out += name + "=" + value.str();
  }
  return out;
}

}  // namespace

std::string to_csv(const theorems::SweepReport& report) {
  std::ostringstream out;
  out << "theorem,params,case,status,pass,expected_divisor,h,order_s,m,a,d,notes\n";
  for (const auto& v : report.verdicts) {
    out << theorems::theorem_name(v.theorem) << ',' << params_compact(v) << ','
        << csv_escape(v.case_label) << ',' << theorems::status_name(v.status) << ','
        << (v.pass ? "true" : "false") << ',' << v.expected_divisor.str() << ','
        << (v.h ? v.h->str() : "") << ',' << (v.order_s ? v.order_s->str() : "") << ','
        << (v.decomposition ? v.decomposition->m.str() : "") << ','
        << (v.decomposition ? v.decomposition->a.str() : "") << ','
        << (v.decomposition ? v.decomposition->d.str() : "") << ','
        << csv_escape(v.notes) << '\n';
  }
  return out.str();
}

std::string to_text(const theorems::SweepReport& report) {
  std::ostringstream out;
  for (const auto& v : report.verdicts) {
    out << theorems::theorem_name(v.theorem);
    for (const auto& [name, value] : v.params) out << ' ' << name << '=' << value.str();
    out << ": " << theorems::status_name(v.status);
    out << " case=" << (v.case_label.empty() ? "-" : v.case_label);
    if (v.decomposition) out << " d=" << v.decomposition->d.str();
    out << " expected=" << v.expected_divisor.str();
    if (v.h) out << " h=" << v.h->str();
    if (v.order_s) out << " s=" << v.order_s->str();
    if (!v.notes.empty()) out << "  [" << v.notes << "]";
    out << '\n';
  }
  const auto& s = report.summary;
  out << "summary: points=" << s.points << " pass=" << s.passed << " fail=" << s.failed
      << " not-applicable=" << s.not_applicable << " excluded=" << s.excluded
      << " skipped=" << s.skipped << '\n';
  for (const auto& line : s.invariant_violations)
    out << "invariant violation: " << line << '\n';
  out << (s.all_ok() ? "result: OK\n" : "result: FAILURES\n");
  return out.str();
}

std::string render(const theorems::SweepReport& report, const SweepConfig& config, Format f) {
  switch (f) {
    case Format::json: return to_json(report, config);
    case Format::csv: return to_csv(report);
    case Format::text: return to_text(report);
  }
  return "";
}

int exit_code_for(const theorems::SweepSummary& summary, bool strict) {
  if (!summary.all_ok()) return 1;
  if (strict && summary.skipped > 0) return 1;
  return 0;
}

}  // namespace quadclass::report
