#ifndef QUADCLASS_ARITH_HPP
#define QUADCLASS_ARITH_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace quadclass {

using Int = boost::multiprecision::cpp_int;

/// Thrown when a computation is refused because an input exceeds a
/// configured budget (factorization size, discriminant size, ...).
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown by factorize() when a cofactor cannot be split within the
/// work limit. Carries the offending residual so failures are loud.
class unfactored_error : public budget_error {
 public:
  unfactored_error(const std::string& what, Int residual)
      : budget_error(what), residual_(std::move(residual)) {}
  const Int& residual() const { return residual_; }

 private:
  Int residual_;
};

namespace arith {

struct FactorEntry {
  Int prime;
  unsigned exponent = 0;
};

// Complete factorization of a positive integer. factors are sorted by
// prime; value == product of prime^exponent.
struct Factorization {
  Int value;
  std::vector<FactorEntry> factors;

  Int reassemble() const;
  bool is_squarefree() const;
};

// m = a^2 * d with d squarefree and sign(d) = sign(m), a > 0.
struct SquarefreeDecomposition {
  Int m;
  Int a;
  Int d;
};

inline Int default_factor_budget() { return Int(1'000'000'000'000LL); }

// a mod m with result in [0, m) for m > 0.
Int mod_floor(const Int& a, const Int& m);

// floor(sqrt(n)); rejects n < 0.
Int isqrt(const Int& n);

// floor(n^(1/k)) for n >= 0, k >= 1.
Int kth_root_floor(const Int& n, unsigned k);

// Root r >= 0 with r*r == n, or nullopt (negative and non-square inputs).
std::optional<Int> is_perfect_square(const Int& n);

// Maximal-exponent representation n = base^exp with exp >= 2, if one
// exists. Requires n >= 2.
std::optional<std::pair<Int, unsigned>> is_perfect_power(const Int& n);

// Miller-Rabin. Deterministic for n < 3.3e24 (fixed witness set); for
// larger inputs the same witnesses make a false positive vanishingly
// unlikely, which is far beyond the factorization budget anyway.
bool is_probable_prime(const Int& n);

// Complete factorization of |n|, |n| >= 1. Trial division, then
// Brent-cycle Pollard rho with fixed seeding so runs are reproducible.
// Inputs with |n| > budget are refused (budget_error); a cofactor that
// survives the internal work cap raises unfactored_error naming it.
Factorization factorize(const Int& n, const Int& budget = default_factor_budget());

// The unique (a, d) with m = a^2 d, d squarefree, a > 0. m != 0.
SquarefreeDecomposition squarefree_decompose(const Int& m,
                                             const Int& budget = default_factor_budget());

// Kronecker symbol (a|n), extending the Jacobi symbol to all n.
int kronecker(const Int& a, const Int& n);

// Square root of a mod odd prime p (Tonelli-Shanks), if one exists.
// The returned root is the smaller of the two, so results are stable.
std::optional<std::uint64_t> sqrt_mod_prime(const Int& a, std::uint64_t p);

}  // namespace arith
}  // namespace quadclass

#endif
