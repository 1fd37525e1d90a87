// quadclass: class-number divisibility toolkit for imaginary quadratic
// fields Q(sqrt(x^2 - 4 k^n)).
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "quadclass/diophantine.hpp"
#include "quadclass/quadfield.hpp"
#include "quadclass/report.hpp"
#include "quadclass/theorems.hpp"

using namespace quadclass;
using json = nlohmann::ordered_json;
namespace mp = boost::multiprecision;

namespace {

struct GlobalOpts {
  std::optional<std::string> format;
  std::optional<std::string> out;
  bool strict = false;
  std::optional<unsigned> workers;
  std::optional<std::string> budget_factor;
  std::optional<std::string> budget_disc;
  std::optional<std::string> witness_bound;
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot open output file '" + out_path + "'");
  f << text;
}

report::Format parse_format(const GlobalOpts& g) {
  std::string name = g.format.value_or("text");
  auto f = report::format_from_name(name);
  if (!f) throw CLI::ValidationError("--format", "unknown format '" + name + "'");
  return *f;
}

theorems::Budgets budgets_from(const GlobalOpts& g) {
  theorems::Budgets b;
  if (g.budget_factor) b.factor = Int(*g.budget_factor);
  if (g.budget_disc) b.disc = Int(*g.budget_disc);
  if (g.witness_bound) b.witness = Int(*g.witness_bound);
  return b;
}

// --- classnum ---------------------------------------------------------------

int cmd_classnum(const std::string& d_str, const GlobalOpts& g) {
  Int input(d_str);
  if (input >= 0) {
    std::cerr << "classnum: d must be negative\n";
    return 2;
  }
  auto budgets = budgets_from(g);
  auto dec = arith::squarefree_decompose(input, budgets.factor);
  bool was_squarefree = dec.a == 1;
  Int d = dec.d;
  auto summary = quadfield::class_group(d, budgets.disc);

  if (parse_format(g) == report::Format::json) {
    json out;
    out["input"] = input.str();
    if (!was_squarefree) out["squarefree_part"] = d.str();
    out["d"] = d.str();
    out["discriminant"] = std::to_string(summary.discriminant);
    out["h"] = std::to_string(summary.h);
    json forms = json::array();
    for (const auto& f : summary.forms)
      forms.push_back({std::to_string(f.a), std::to_string(f.b), std::to_string(f.c)});
    out["reduced_forms"] = forms;
    emit(out.dump(2) + "\n", g.out.value_or(""));
  } else {
    std::ostringstream os;
    if (!was_squarefree)
      os << "note: " << input.str() << " = " << dec.a.str() << "^2 * " << d.str()
         << "; using its squarefree part d = " << d.str() << "\n";
    os << "d = " << d.str() << ", discriminant D = " << summary.discriminant
       << ", h(d) = " << summary.h << "\n";
    os << "reduced forms:\n";
    for (const auto& f : summary.forms) os << "  " << f.str() << "\n";
    emit(os.str(), g.out.value_or(""));
  }
  return 0;
}

// --- squarefree --------------------------------------------------------------

int cmd_squarefree(const std::string& m_str, const GlobalOpts& g) {
  Int m(m_str);
  auto dec = arith::squarefree_decompose(m, budgets_from(g).factor);
  if (parse_format(g) == report::Format::json) {
    json out;
    out["m"] = dec.m.str();
    out["a"] = dec.a.str();
    out["d"] = dec.d.str();
    emit(out.dump(2) + "\n", g.out.value_or(""));
  } else {
    std::ostringstream os;
    os << dec.m.str() << " = " << dec.a.str() << "^2 * " << dec.d.str() << "\n";
    emit(os.str(), g.out.value_or(""));
  }
  return 0;
}

// --- verify / sweep -----------------------------------------------------------

struct AxisFlags {
  std::string value;  // single point
  std::string range;  // lo..hi
  std::string odd;    // lo..hi, odd only
  std::string even;   // lo..hi, even only
};

void add_axis(CLI::App* cmd, const std::string& name, AxisFlags& f) {
  cmd->add_option("--" + name, f.value, "single value for " + name);
  cmd->add_option("--" + name + "-range", f.range, "inclusive range lo..hi for " + name);
  cmd->add_option("--" + name + "-odd", f.odd, "odd values in lo..hi for " + name);
  cmd->add_option("--" + name + "-even", f.even, "even values in lo..hi for " + name);
}

std::optional<std::string> axis_spec(const AxisFlags& f) {
  if (!f.value.empty()) return f.value;
  if (!f.range.empty()) return f.range;
  if (!f.odd.empty()) return f.odd + " odd";
  if (!f.even.empty()) return f.even + " even";
  return std::nullopt;
}

// Command-line flags take precedence over whatever the config file said.
int run_sweep(report::SweepConfig cfg, const GlobalOpts& g) {
  if (g.budget_factor) cfg.budgets.factor = Int(*g.budget_factor);
  if (g.budget_disc) cfg.budgets.disc = Int(*g.budget_disc);
  if (g.witness_bound) cfg.budgets.witness = Int(*g.witness_bound);
  if (g.strict) cfg.strict = true;
  if (g.workers) cfg.workers = *g.workers;
  if (g.format) cfg.format = parse_format(g);
  if (g.out) cfg.out_path = *g.out;
  auto grid = report::grid_from_config(cfg);
  auto rep = theorems::sweep(grid, cfg.budgets, cfg.workers);
  emit(report::render(rep, cfg, cfg.format), cfg.out_path);
  return report::exit_code_for(rep.summary, cfg.strict);
}

// --- dioph ---------------------------------------------------------------------

int cmd_dioph(const std::string& equation, const std::string& k, unsigned z_max, int rhs,
              const std::string& x_max, unsigned y_max, unsigned max_index,
              const GlobalOpts& g) {
  json out;
  out["equation"] = equation;
  std::ostringstream text;
  json sols = json::array();

  auto push2 = [&](const std::string& a, const std::string& b) {
    sols.push_back({a, b});
    text << "(" << a << ", " << b << ")\n";
  };

  if (equation == "x2+1=2k^z") {
    if (k.empty()) throw CLI::ValidationError("dioph", "x2+1=2k^z needs --k");
    for (const auto& [x, z] : dioph::solve_x2_plus_1_eq_2kz(Int(k), z_max))
      push2(x.str(), std::to_string(z));
    out["k"] = k;
    out["z_max"] = std::to_string(z_max);
  } else if (equation == "x4-2y2") {
    for (const auto& [x, y] : dioph::solve_x4_minus_2y2(rhs, Int(x_max)))
      push2(x.str(), y.str());
    out["rhs"] = std::to_string(rhs);
    out["x_max"] = x_max;
  } else if (equation == "2x2+1=3^y") {
    for (const auto& [x, y] : dioph::solve_2x2_plus_1_eq_3y(y_max))
      push2(x.str(), std::to_string(y));
    out["y_max"] = std::to_string(y_max);
  } else if (equation == "lucas-squares") {
    for (unsigned n : dioph::lucas_squares_upto(max_index)) {
      sols.push_back(std::to_string(n));
      text << n << "\n";
    }
    out["max_index"] = std::to_string(max_index);
  } else {
    std::cerr << "dioph: unknown equation '" << equation
              << "' (try: x2+1=2k^z, x4-2y2, 2x2+1=3^y, lucas-squares)\n";
    return 2;
  }
  out["solutions"] = sols;
  text << sols.size() << " solution(s)\n";

  switch (parse_format(g)) {
    case report::Format::json: emit(out.dump(2) + "\n", g.out.value_or("")); break;
    case report::Format::csv: {
      std::ostringstream csv;
      for (const auto& s : sols) {
        if (s.is_array())
          csv << s[0].get<std::string>() << "," << s[1].get<std::string>() << "\n";
        else
          csv << s.get<std::string>() << "\n";
      }
      emit(csv.str(), g.out.value_or(""));
      break;
    }
    case report::Format::text: emit(text.str(), g.out.value_or("")); break;
  }
  return 0;
}

// --- bs-classify -----------------------------------------------------------------

int cmd_bs_classify(int gamma_sq, const std::string& d1, const std::string& d2,
                    const std::string& p, unsigned y_max, const GlobalOpts& g) {
  auto budgets = budgets_from(g);
  dioph::BSInstance inst(gamma_sq, Int(d1), Int(d2), Int(p));
  auto c = dioph::classify_bs(inst, budgets.witness);
  auto sols = dioph::count_solutions_d1x2_plus_d2_eq_g2py(inst, y_max);

  if (parse_format(g) == report::Format::json) {
    json out;
    out["gamma_sq"] = std::to_string(gamma_sq);
    out["d1"] = d1;
    out["d2"] = d2;
    out["p"] = p;
    out["in_E"] = c.in_e;
    if (c.in_f) out["in_F"] = {{"h1", std::to_string(c.in_f->h1)},
                               {"eps", std::to_string(c.in_f->eps)}};
    else out["in_F"] = false;
    if (c.in_g) out["in_G"] = {{"h2", std::to_string(*c.in_g)}};
    else out["in_G"] = false;
    if (c.in_h) out["in_H"] = {{"s0", c.in_h->s0.str()}, {"t0", std::to_string(c.in_h->t0)}};
    else out["in_H"] = false;
    out["search_bound"] = c.search_bound.str();
    json js = json::array();
    for (const auto& [x, y] : sols) js.push_back({x.str(), std::to_string(y)});
    out["solutions"] = js;
    out["y_max"] = std::to_string(y_max);
    emit(out.dump(2) + "\n", g.out.value_or(""));
  } else {
    std::ostringstream os;
    os << "(gamma^2, D1, D2, p) = (" << gamma_sq << ", " << d1 << ", " << d2 << ", " << p
       << ")\n";
    os << "in E: " << (c.in_e ? "yes" : "no") << "\n";
    os << "in F: "
       << (c.in_f ? "yes (h1 = " + std::to_string(c.in_f->h1) +
                        ", eps = " + std::to_string(c.in_f->eps) + ")"
                  : "no")
       << "\n";
    os << "in G: " << (c.in_g ? "yes (h2 = " + std::to_string(*c.in_g) + ")" : "no") << "\n";
    os << "in H: "
       << (c.in_h ? "yes (s0 = " + c.in_h->s0.str() + ", t0 = " + std::to_string(c.in_h->t0) + ")"
                  : "no")
       << "\n";
    os << "witness search bound: " << c.search_bound.str() << "\n";
    os << "solutions with y <= " << y_max << ":";
    for (const auto& [x, y] : sols) os << " (" << x.str() << ", " << y << ")";
    os << "\n";
    if (!c.any()) os << "outside all exceptional families: at most one solution expected\n";
    emit(os.str(), g.out.value_or(""));
  }
  return 0;
}

// --- paper-examples -----------------------------------------------------------------

int cmd_paper_examples(const GlobalOpts& g) {
  struct Line {
    std::string claim;
    std::string expected;
    std::string computed;
    bool ok;
  };
  std::vector<Line> lines;
  auto add = [&](const std::string& claim, const std::string& expected,
                 const std::string& computed) {
    lines.push_back({claim, expected, computed, expected == computed});
  };

  const std::pair<std::int64_t, std::int64_t> hs[] = {
      {-11, 1}, {-51, 2}, {-3, 1}, {-6347, 28}, {-187, 2}, {-19, 1}, {-7, 1}};
  for (auto [d, h] : hs)
    add("h(" + std::to_string(d) + ") = " + std::to_string(h), std::to_string(h),
        std::to_string(quadfield::class_number(Int(d))));

  auto field_of = [](const Int& m) {
    return arith::squarefree_decompose(m, Int("1000000000000000")).d.str();
  };
  add("1 - 4*5^2 lands in Q(sqrt(-11))", "-11", field_of(1 - 4 * mp::pow(Int(5), 2)));
  add("1 - 4*5^4 lands in Q(sqrt(-51))", "-51", field_of(1 - 4 * mp::pow(Int(5), 4)));
  add("1 - 4*13^2 lands in Q(sqrt(-3))", "-3", field_of(1 - 4 * mp::pow(Int(13), 2)));
  add("1 - 4*13^8 lands in Q(sqrt(-6347))", "-6347", field_of(1 - 4 * mp::pow(Int(13), 8)));
  add("1 - 4*29^4 lands in Q(sqrt(-187))", "-187", field_of(1 - 4 * mp::pow(Int(29), 4)));
  add("3^4 - 4*2^6 lands in Q(sqrt(-7))", "-7", field_of(mp::pow(Int(3), 4) - 256));
  add("3^4 - 4*5^2 lands in Q(sqrt(-19))", "-19", field_of(mp::pow(Int(3), 4) - 100));

  {
    auto c = dioph::thm6_square_condition(Int(5), 2, 2);
    add("2*5 - (-3)^2 is a square", "1",
        c.status == dioph::SquareConditionResult::Status::square ? c.root.str() : "no");
    auto c2 = dioph::thm6_square_condition(Int(2), 2, 1);
    add("2^2 - 3 is a square", "1",
        c2.status == dioph::SquareConditionResult::Status::square ? c2.root.str() : "no");
  }

  {
    std::ostringstream got;
    for (const auto& [x, z] : dioph::solve_x2_plus_1_eq_2kz(Int(13), 20))
      got << "(" << x.str() << "," << z << ")";
    add("x^2+1 = 2*13^z solutions", "(5,1)(239,4)", got.str());
  }
  {
    std::ostringstream got;
    for (const auto& [x, y] : dioph::solve_2x2_plus_1_eq_3y(40))
      got << "(" << x.str() << "," << y << ")";
    add("2x^2+1 = 3^y solutions", "(1,1)(2,2)(11,5)", got.str());
  }
  {
    auto none = dioph::solve_x4_minus_2y2(1, Int(1000));
    add("x^4 - 2y^2 = 1 has no solution (x <= 1000)", "0", std::to_string(none.size()));
    std::ostringstream got;
    for (const auto& [x, y] : dioph::solve_x4_minus_2y2(-1, Int(1000)))
      got << "(" << x.str() << "," << y.str() << ")";
    add("x^4 - 2y^2 = -1 solutions (x <= 1000)", "(1,1)", got.str());
  }
  {
    std::ostringstream got;
    for (unsigned n : dioph::lucas_squares_upto(200)) got << n << " ";
    add("Lucas squares up to index 200", "1 3 ", got.str());
  }
  {
    auto v = theorems::verify_thm5(Int(29), Int(4));
    add("(k,n)=(29,4): h(-187) divisible by n/2 but not n", "yes",
        (v.pass && *v.h % 2 == 0 && *v.h % 4 != 0) ? "yes" : "no");
    auto w = theorems::verify_thm6(Int(2), Int(6), Int(2));
    add("(q,n,e)=(2,6,2): h(-7) = 1, not divisible by 6", "yes",
        (w.pass && *w.h == 1 && *w.h % 6 != 0) ? "yes" : "no");
  }

  bool all_ok = true;
  std::ostringstream os;
  for (const auto& l : lines) {
    all_ok &= l.ok;
    os << (l.ok ? "ok      " : "MISMATCH") << "  " << l.claim << ": expected " << l.expected
       << ", computed " << l.computed << "\n";
  }
  os << (all_ok ? "all paper claims reproduced\n" : "some claims FAILED\n");

  if (parse_format(g) == report::Format::json) {
    json out = json::array();
    for (const auto& l : lines)
      out.push_back({{"claim", l.claim},
                     {"expected", l.expected},
                     {"computed", l.computed},
                     {"ok", l.ok}});
    emit(out.dump(2) + "\n", g.out.value_or(""));
  } else {
    emit(os.str(), g.out.value_or(""));
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadclass: verification toolkit for class-number divisibility over "
               "imaginary quadratic fields Q(sqrt(x^2 - 4 k^n))"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--format", g.format, "output format: json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", g.out, "write output to this file instead of stdout");
  app.add_flag("--strict", g.strict, "budget-skipped points fail the run");
  app.add_option("--workers", g.workers, "worker threads for sweeps");
  app.add_option("--budget-factor", g.budget_factor, "cap on |x^2 - 4 k^n| for factorization");
  app.add_option("--budget-disc", g.budget_disc, "cap on |D| for class-group enumeration");
  app.add_option("--witness-bound", g.witness_bound, "Bugeaud-Shorey witness search bound");

  // classnum
  std::string classnum_d;
  auto* classnum = app.add_subcommand("classnum", "class number and reduced forms of Q(sqrt(d))");
  classnum->add_option("d", classnum_d, "negative integer")->required();

  // squarefree
  std::string squarefree_m;
  auto* squarefree = app.add_subcommand("squarefree", "decompose m = a^2 d with d squarefree");
  squarefree->add_option("m", squarefree_m, "nonzero integer")->required();

  // verify
  std::string verify_theorem;
  AxisFlags ax_k, ax_n, ax_q, ax_e, ax_l, ax_x;
  bool verify_e_auto = false;
  auto* verify = app.add_subcommand("verify", "verify one theorem on a point or grid");
  verify->add_option("theorem", verify_theorem, "t2|t3|t4|t5|t6|t41|t42")->required();
  add_axis(verify, "k", ax_k);
  add_axis(verify, "n", ax_n);
  add_axis(verify, "q", ax_q);
  add_axis(verify, "e", ax_e);
  add_axis(verify, "l", ax_l);
  add_axis(verify, "x", ax_x);
  verify->add_flag("--e-auto", verify_e_auto, "every e with 3^(2e) < 4 q^n (t6 only)");

  // dioph
  std::string dioph_eq, dioph_k = "", dioph_xmax = "1000";
  unsigned dioph_zmax = 20, dioph_ymax = 40, dioph_maxindex = 1000;
  int dioph_rhs = 1;
  auto* dioph_cmd = app.add_subcommand("dioph", "run one Diophantine enumerator");
  dioph_cmd->add_option("equation", dioph_eq,
                        "x2+1=2k^z | x4-2y2 | 2x2+1=3^y | lucas-squares")
      ->required();
  dioph_cmd->add_option("--k", dioph_k, "base k for x2+1=2k^z");
  dioph_cmd->add_option("--z-max", dioph_zmax, "exponent bound");
  dioph_cmd->add_option("--rhs", dioph_rhs, "+1 or -1 for x4-2y2");
  dioph_cmd->add_option("--x-max", dioph_xmax, "x bound for x4-2y2");
  dioph_cmd->add_option("--y-max", dioph_ymax, "y bound for 2x2+1=3^y");
  dioph_cmd->add_option("--max-index", dioph_maxindex, "index bound for lucas-squares");

  // bs-classify
  int bs_gamma_sq = 1;
  std::string bs_d1, bs_d2, bs_p;
  unsigned bs_ymax = 40;
  auto* bs = app.add_subcommand("bs-classify",
                                "membership in the exceptional families E, F, G, H_gamma");
  bs->add_option("--gamma-sq", bs_gamma_sq, "gamma^2: 1, 2 or 4")->required();
  bs->add_option("--d1", bs_d1, "D1")->required();
  bs->add_option("--d2", bs_d2, "D2")->required();
  bs->add_option("--p", bs_p, "prime p")->required();
  bs->add_option("--y-max", bs_ymax, "bound for the solution count");

  // paper-examples
  auto* paper = app.add_subcommand("paper-examples",
                                   "recompute every numeric claim and print a checklist");

  // sweep
  std::string sweep_config;
  auto* sweep_cmd = app.add_subcommand("sweep", "run a sweep from a config file");
  sweep_cmd->add_option("--config", sweep_config, "flat key = value config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (const char* dir = std::getenv("QUADCLASS_CACHE_DIR"); dir && *dir)
    quadfield::set_persistent_cache_dir(dir);

  try {
    if (*classnum) return cmd_classnum(classnum_d, g);
    if (*squarefree) return cmd_squarefree(squarefree_m, g);
    if (*verify) {
      auto id = theorems::theorem_from_name(verify_theorem);
      if (!id) {
        std::cerr << "verify: unknown theorem '" << verify_theorem << "'\n";
        return 2;
      }
      report::SweepConfig cfg;
      cfg.theorem = *id;
      cfg.e_auto = verify_e_auto;
      const std::pair<const char*, const AxisFlags*> axes[] = {
          {"k", &ax_k}, {"n", &ax_n}, {"q", &ax_q}, {"e", &ax_e}, {"l", &ax_l}, {"x", &ax_x}};
      for (const auto& [name, flags] : axes)
        if (auto spec = axis_spec(*flags)) cfg.range_specs[name] = *spec;
      return run_sweep(std::move(cfg), g);
    }
    if (*dioph_cmd)
      return cmd_dioph(dioph_eq, dioph_k, dioph_zmax, dioph_rhs, dioph_xmax, dioph_ymax,
                       dioph_maxindex, g);
    if (*bs) return cmd_bs_classify(bs_gamma_sq, bs_d1, bs_d2, bs_p, bs_ymax, g);
    if (*paper) return cmd_paper_examples(g);
    if (*sweep_cmd) {
      auto cfg = report::parse_config_file(sweep_config);
      return run_sweep(std::move(cfg), g);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
