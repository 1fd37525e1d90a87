#ifndef QUADCLASS_QUADFIELD_HPP
#define QUADCLASS_QUADFIELD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quadclass/arith.hpp"

namespace quadclass::quadfield {

/// Thrown by prime_form_above when p is inert or ramified.
class nonsplit_error : public std::runtime_error {
 public:
  explicit nonsplit_error(const std::string& what) : std::runtime_error(what) {}
};

// An element (u + v*sqrt(d))/2 of the maximal order of Q(sqrt(d)),
// d squarefree and negative. Membership of the maximal order means
//   d = 1 mod 4:  u = v mod 2
//   d = 2,3 mod 4: u, v both even
// and both are checked on construction and after every operation.
class RingElement {
 public:
  RingElement(Int u, Int v, Int d);

  // the rational integer t, i.e. (2t + 0*sqrt(d))/2
  static RingElement integer(const Int& t, const Int& d);

  const Int& u() const { return u_; }
  const Int& v() const { return v_; }
  const Int& d() const { return d_; }

  Int norm() const;   // (u^2 - v^2 d)/4, nonnegative since d < 0
  Int trace() const;  // u
  RingElement conj() const;
  RingElement operator-() const;
  RingElement operator*(const RingElement& rhs) const;
  RingElement pow(const Int& e) const;  // e >= 0
  bool operator==(const RingElement& rhs) const = default;
  bool is_zero() const { return u_ == 0 && v_ == 0; }

  std::string str() const;

 private:
  Int u_, v_, d_;
};

// Spelled-out operation names, matching how the rest of the toolkit
// refers to them.
inline Int elem_norm(const RingElement& x) { return x.norm(); }
inline Int elem_trace(const RingElement& x) { return x.trace(); }
inline RingElement elem_conj(const RingElement& x) { return x.conj(); }
inline RingElement elem_mul(const RingElement& x, const RingElement& y) { return x * y; }
inline RingElement elem_pow(const RingElement& x, const Int& e) { return x.pow(e); }

// Primitive positive-definite binary quadratic form A x^2 + B xy + C y^2
// of negative discriminant B^2 - 4AC. Coefficients stay in int64 range;
// the discriminant budget keeps all internal arithmetic well inside it.
struct QuadForm {
  std::int64_t a = 1;
  std::int64_t b = 1;
  std::int64_t c = 1;

  QuadForm() = default;
  QuadForm(std::int64_t a, std::int64_t b, std::int64_t c);  // validates

  std::int64_t discriminant() const;
  bool is_reduced() const;
  bool is_principal() const;
  bool operator==(const QuadForm& rhs) const = default;
  std::string str() const;
};

struct ClassGroupSummary {
  std::int64_t discriminant = 0;
  std::int64_t h = 0;
  std::vector<QuadForm> forms;  // reduced, sorted by (a, b)
};

inline Int default_disc_budget() { return Int(100'000'000); }

// d itself when d = 1 mod 4, else 4d. d squarefree, not 0 or 1.
Int fundamental_discriminant(const Int& d);

// All reduced primitive forms of discriminant D < 0, D = 0 or 1 mod 4,
// in (A, B) order. This is the class-number enumeration; |D| is capped
// by the budget.
std::vector<QuadForm> reduced_forms(const Int& D, const Int& budget = default_disc_budget());

// h(d) for squarefree d < 0, via the memoized class-group cache.
std::int64_t class_number(const Int& d, const Int& budget = default_disc_budget());

// Cached summary (h plus the reduced forms) for squarefree d < 0.
ClassGroupSummary class_group(const Int& d, const Int& budget = default_disc_budget());

// Identity form (1, B0, ...) of discriminant D.
QuadForm principal_form(std::int64_t D);

// Reduce an arbitrary primitive form with negative discriminant.
QuadForm reduce(const QuadForm& f);

// Gauss composition; both forms must share a discriminant. Returns the
// reduced representative of the product class.
QuadForm compose(const QuadForm& f, const QuadForm& g);

QuadForm form_inverse(const QuadForm& f);
QuadForm form_pow(const QuadForm& f, Int e);  // e >= 0

// Least s >= 1 with f^s principal. Computed through the divisors of h,
// so it always divides the class number.
std::int64_t form_order(const QuadForm& f, const Int& budget = default_disc_budget());

// A reduced form above a split prime p: equivalent to (p, B, C) with
// B^2 = D mod 4p, B the smaller nonnegative root (the conjugate choice
// gives the inverse class and hence the same order). Inert and
// ramified primes are rejected with nonsplit_error.
QuadForm prime_form_above(const Int& p, const Int& D);

// form_order(prime_form_above(p, fundamental_discriminant(d))).
std::int64_t ideal_class_order_above(const Int& p, const Int& d,
                                     const Int& budget = default_disc_budget());

// {+-1}, plus {+-i} for d = -1, plus the sixth roots of unity for d = -3.
std::vector<RingElement> unit_group(const Int& d);

// True iff x = y^2 for some y in the same order. Uses the norm/trace
// square criterion to propose roots and verifies each candidate exactly.
bool is_square_in_ring(const RingElement& x);

// True iff x = y^p for some y in the same order, p an odd prime.
// Bounded search: N(y) is forced to the exact p-th root of N(x).
bool is_pth_power_in_ring(const RingElement& x, const Int& p);

// Optional persisted (D, h) cache: decimal text lines "D h" appended to
// <dir>/classnum.txt. Loaded immediately; unparseable lines are skipped.
void set_persistent_cache_dir(const std::string& dir);

}  // namespace quadclass::quadfield

#endif
