#include <doctest.h>

#include <random>

#include "quadclass/report.hpp"

using namespace quadclass;
using namespace quadclass::report;

TEST_CASE("range spec parsing") {
  auto r = parse_range_spec("3..99 odd");
  CHECK(r.lo == 3);
  CHECK(r.hi == 99);
  CHECK(r.parity == theorems::GridRange::Parity::odd);
  CHECK(r.step == 1);

  auto s = parse_range_spec("5");
  CHECK(s.lo == 5);
  CHECK(s.hi == 5);

  auto t = parse_range_spec("2..10 step 2");
  CHECK(t.step == 2);
  CHECK(t.values() == std::vector<Int>{2, 4, 6, 8, 10});

  CHECK(parse_range_spec("3..9 odd").values() == std::vector<Int>{3, 5, 7, 9});

  CHECK_THROWS_AS(parse_range_spec(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_range_spec("1..x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range_spec("1..5 sideways"), std::invalid_argument);
}

TEST_CASE("config text parsing") {
  const char* text = R"(
# t5 reproduction sweep
theorem = t5
k = 3..99 odd
n = 2..10
budget-factor = 1000000000000
budget-disc = 100000000
witness-bound = 10000
format = json
out = t5.json
workers = 4
strict = true
)";
  auto cfg = parse_config_text(text);
  CHECK(cfg.theorem == theorems::TheoremId::T5);
  CHECK(cfg.range_specs.at("k") == "3..99 odd");
  CHECK(cfg.range_specs.at("n") == "2..10");
  CHECK(cfg.budgets.factor == Int("1000000000000"));
  CHECK(cfg.budgets.disc == 100000000);
  CHECK(cfg.budgets.witness == 10000);
  CHECK(cfg.format == Format::json);
  CHECK(cfg.out_path == "t5.json");
  CHECK(cfg.workers == 4);
  CHECK(cfg.strict);

  auto grid = grid_from_config(cfg);
  CHECK(grid.theorem == theorems::TheoremId::T5);
  CHECK(grid.ranges.at("k").parity == theorems::GridRange::Parity::odd);

  CHECK_THROWS_AS(parse_config_text("k = 1..5\n"), std::invalid_argument);  // no theorem
  CHECK_THROWS_AS(parse_config_text("theorem = t5\nbogus = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("theorem = nope\n"), std::invalid_argument);
}

TEST_CASE("t6 e_auto via config") {
  auto cfg = parse_config_text("theorem = t6\nq = 2..13\nn = 1..4\ne = auto\n");
  CHECK(cfg.e_auto);
  auto grid = grid_from_config(cfg);
  CHECK(grid.e_auto);
  CHECK(grid.ranges.count("e") == 0);
}

namespace {

std::pair<theorems::SweepReport, SweepConfig> small_report() {
  SweepConfig cfg;
  cfg.theorem = theorems::TheoremId::T5;
  cfg.range_specs["k"] = "3..9 odd";
  cfg.range_specs["n"] = "2..4";
  auto report = theorems::sweep(grid_from_config(cfg), cfg.budgets, 1);
  return {report, cfg};
}

}  // namespace

TEST_CASE("json report round-trips byte for byte") {
  auto [report, cfg] = small_report();
  std::string first = to_json(report, cfg);
  auto [cfg2, report2] = from_json(first);
  std::string second = to_json(report2, cfg2);
  CHECK(first == second);
  CHECK(report2.verdicts.size() == report.verdicts.size());
  CHECK(report2.summary.passed == report.summary.passed);
}

TEST_CASE("json round-trip with e_auto and three-parameter points") {
  SweepConfig cfg;
  cfg.theorem = theorems::TheoremId::T6;
  cfg.range_specs["q"] = "2..7";
  cfg.range_specs["n"] = "1..4";
  cfg.e_auto = true;
  auto report = theorems::sweep(grid_from_config(cfg), cfg.budgets, 2);
  REQUIRE(report.summary.points > 0);
  std::string first = to_json(report, cfg);
  auto [cfg2, report2] = from_json(first);
  CHECK(to_json(report2, cfg2) == first);
}

TEST_CASE("csv has one row per point") {
  auto [report, cfg] = small_report();
  std::string csv = to_csv(report);
  std::size_t rows = std::count(csv.begin(), csv.end(), '\n');
  CHECK(rows == report.verdicts.size() + 1);  // header included
  CHECK(csv.rfind("theorem,params,case,", 0) == 0);
}

TEST_CASE("text report carries the summary") {
  auto [report, cfg] = small_report();
  std::string text = to_text(report);
  CHECK(text.find("summary:") != std::string::npos);
  CHECK(text.find("result: OK") != std::string::npos);
}

TEST_CASE("render dispatches on format") {
  auto [report, cfg] = small_report();
  CHECK(render(report, cfg, Format::json) == to_json(report, cfg));
  CHECK(render(report, cfg, Format::csv) == to_csv(report));
  CHECK(render(report, cfg, Format::text) == to_text(report));
}

TEST_CASE("exit code contract") {
  theorems::SweepSummary s;
  s.points = 10;
  s.passed = 10;
  CHECK(exit_code_for(s, false) == 0);
  CHECK(exit_code_for(s, true) == 0);

  s.skipped = 2;
  CHECK(exit_code_for(s, false) == 0);
  CHECK(exit_code_for(s, true) == 1);

  s.skipped = 0;
  s.failed = 1;
  CHECK(exit_code_for(s, false) == 1);

  s.failed = 0;
  s.invariant_violations.push_back("boom");
  CHECK(exit_code_for(s, false) == 1);
}

TEST_CASE("exit code property over synthetic summaries") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 500; ++i) {
    theorems::SweepSummary s;
    s.passed = rng() % 5;
    s.failed = rng() % 3;
    s.skipped = rng() % 3;
    s.not_applicable = rng() % 3;
    s.excluded = rng() % 2;
    if (rng() % 4 == 0) s.invariant_violations.push_back("x");
    s.points = s.passed + s.failed + s.skipped + s.not_applicable + s.excluded;
    bool strict = rng() % 2 == 0;
    int code = exit_code_for(s, strict);
    bool bad = s.failed > 0 || !s.invariant_violations.empty() || (strict && s.skipped > 0);
    CHECK(code == (bad ? 1 : 0));
    // not-applicable / excluded / skipped never fail a non-strict run
    if (s.failed == 0 && s.invariant_violations.empty() && !strict) CHECK(code == 0);
  }
}
