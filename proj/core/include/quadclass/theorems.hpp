#ifndef QUADCLASS_THEOREMS_HPP
#define QUADCLASS_THEOREMS_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadclass/arith.hpp"
#include "quadclass/diophantine.hpp"
#include "quadclass/quadfield.hpp"

namespace quadclass::theorems {

enum class TheoremId { T2, T3, T4, T5, T6, T41, T42 };

const char* theorem_name(TheoremId id);                 // "t2", ..., "t41", "t42"
std::optional<TheoremId> theorem_from_name(const std::string& name);

enum class VerdictStatus { Pass, Fail, NotApplicable, Excluded, Skipped };

const char* status_name(VerdictStatus s);

struct Budgets {
  Int factor = arith::default_factor_budget();       // cap on |x^2 - 4 k^n|
  Int disc = quadfield::default_disc_budget();       // cap on |D| for class groups
  Int witness = dioph::default_witness_bound();      // Bugeaud-Shorey witness searches
};

// One grid point's outcome. `pass` is true exactly when status == Pass,
// i.e. the expected divisor divides h (plus the exact published values
// at the hard-coded exceptional points).
struct TheoremVerdict {
  TheoremId theorem = TheoremId::T2;
  std::vector<std::pair<std::string, Int>> params;  // ordered, e.g. {{"k",29},{"n",4}}
  std::optional<arith::SquarefreeDecomposition> decomposition;
  std::string case_label;
  Int expected_divisor = 1;
  std::optional<Int> h;
  std::optional<Int> order_s;
  // True when this point's case only guarantees n/2 | h, so order_s may
  // legitimately be n/2 instead of n.
  bool order_exception_allowed = false;
  VerdictStatus status = VerdictStatus::Skipped;
  bool pass = false;
  std::string notes;

  const Int* param(const std::string& name) const;
};

// n odd: n | h(d) for d from 1 - 4 k^n.
TheoremVerdict verify_thm2(const Int& k, const Int& n, const Budgets& budgets = {});

// n | h(d) unless the a = a1 a2, a1^2 + a2^2 d = +-2 condition fires,
// in which case n/2 | h(d). Quadruple (4, 2, 3, -7) is excluded by
// hypothesis.
TheoremVerdict verify_thm3(const Int& k, const Int& n, const Budgets& budgets = {});

// k odd with a prime divisor = 3 mod 4, n even: n | h(d).
TheoremVerdict verify_thm4(const Int& k, const Int& n, const Budgets& budgets = {});

// The refined odd-k theorem with published exceptional cases at
// k = 5 (n = 2, 4) and k = 13 (n = 2, 8).
TheoremVerdict verify_thm5(const Int& k, const Int& n, const Budgets& budgets = {});

// The 3^(2e) - 4 q^n theorem, full case tree, with the ideal-class
// order above q recorded.
TheoremVerdict verify_thm6(const Int& q, const Int& n, const Int& e,
                           const Budgets& budgets = {});

// x^2 - 4 k^n with the k^n < (1-d)^2/16 size hypothesis.
TheoremVerdict verify_thm4_1(const Int& x, const Int& k, const Int& n,
                             const Budgets& budgets = {});

// k = 2 l^e, l odd prime, (n, e) != (4, 0): n | h(d).
TheoremVerdict verify_thm4_2(const Int& l, const Int& e, const Int& n,
                             const Budgets& budgets = {});

struct GridRange {
  Int lo = 0;
  Int hi = -1;  // empty by default
  Int step = 1;
  enum class Parity { any, odd, even } parity = Parity::any;

  std::vector<Int> values() const;  // lo, lo+step, ..., parity-filtered
};

struct GridSpec {
  TheoremId theorem = TheoremId::T5;
  std::map<std::string, GridRange> ranges;  // keyed by parameter name
  // T6 only: enumerate every e with 3^(2e) < 4 q^n instead of a fixed range.
  bool e_auto = false;
};

struct SweepSummary {
  std::size_t points = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t not_applicable = 0;
  std::size_t excluded = 0;
  std::size_t skipped = 0;
  std::vector<std::string> invariant_violations;

  bool all_ok() const { return failed == 0 && invariant_violations.empty(); }
};

struct SweepReport {
  GridSpec grid;
  Budgets budgets;
  std::vector<TheoremVerdict> verdicts;  // deterministic grid order
  SweepSummary summary;
};

// Evaluates every grid point (in parallel when workers > 1; the verdict
// order never depends on scheduling), then runs the theorem's
// cross-point invariant checks. Per-point errors are recorded as
// skipped/failed verdicts, never thrown.
SweepReport sweep(const GridSpec& grid, const Budgets& budgets = {}, unsigned workers = 1);

}  // namespace quadclass::theorems

#endif
