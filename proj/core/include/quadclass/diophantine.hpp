#ifndef QUADCLASS_DIOPHANTINE_HPP
#define QUADCLASS_DIOPHANTINE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "quadclass/arith.hpp"

namespace quadclass::dioph {

// Fibonacci / Lucas with the usual seeds F0=0, F1=1, L0=2, L1=1.
Int fibonacci(unsigned n);
Int lucas(unsigned n);

// Indices n <= bound_index with L_n a perfect square. The expected
// answer is {1, 3} at any bound (Cohn).
std::vector<unsigned> lucas_squares_upto(unsigned bound_index);

// All positive solutions (x, z), z <= z_max, of x^2 + 1 = 2 k^z.
std::vector<std::pair<Int, unsigned>> solve_x2_plus_1_eq_2kz(const Int& k, unsigned z_max);

// All positive solutions (x, y), x <= x_max, of x^4 - 2y^2 = rhs with
// rhs in {+1, -1}.
std::vector<std::pair<Int, Int>> solve_x4_minus_2y2(int rhs, const Int& x_max);

// All positive solutions (x, y), y <= y_max, of 2x^2 + 1 = 3^y.
std::vector<std::pair<Int, unsigned>> solve_2x2_plus_1_eq_3y(unsigned y_max);

// One instance of the Bugeaud-Shorey equation D1 x^2 + D2 = gamma^2 p^y.
// gamma is carried as gamma^2 in {1, 2, 4} so sqrt(2) stays exact.
struct BSInstance {
  int gamma_sq = 1;
  Int d1;
  Int d2;
  Int p;

  BSInstance(int gamma_sq, Int d1, Int d2, Int p);  // validates the constraints
};

struct BSWitnessF {
  unsigned h1 = 0;
  int eps = 0;  // +1 or -1
};

struct BSWitnessH {
  Int s0;
  unsigned t0 = 0;
};

// Membership of (gamma, D1, D2, p) in the exceptional families E, F, G,
// H_gamma. Witnesses reproduce the defining identities exactly; absence
// claims are only as strong as the recorded search bound.
struct BSClassification {
  bool in_e = false;
  std::optional<BSWitnessF> in_f;
  std::optional<unsigned> in_g;  // h2 with D2 = 4 p^h2 - 1
  std::optional<BSWitnessH> in_h;
  Int search_bound;

  bool any() const { return in_e || in_f || in_g || in_h; }
};

inline Int default_witness_bound() { return Int(10'000); }

BSClassification classify_bs(const BSInstance& inst,
                             const Int& search_bound = default_witness_bound());

// All positive solutions (x, y), y <= y_max, of D1 x^2 + D2 = gamma^2 p^y.
std::vector<std::pair<Int, unsigned>> count_solutions_d1x2_plus_d2_eq_g2py(
    const BSInstance& inst, unsigned y_max);

// True iff D1 x^2 + 3^(2e) = 4 q^y has at most one positive solution
// with y <= y_max. D1 odd, q prime != 3.
bool lemma32_uniqueness(const Int& d1, unsigned e, const Int& q, unsigned y_max);

// The square conditions that split the n = 2 mod 4 theorem cases:
// odd q: 2 q^(n/2) - (-3)^e; q = 2: 2^((n/2)+1) - 3^e (odd e only).
struct SquareConditionResult {
  enum class Status { square, not_square, not_applicable };
  Status status = Status::not_applicable;
  Int root;  // set when status == square
};

SquareConditionResult thm6_square_condition(const Int& q, unsigned n, unsigned e);

}  // namespace quadclass::dioph

#endif
