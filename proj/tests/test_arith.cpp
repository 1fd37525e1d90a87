#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "quadclass/arith.hpp"

using namespace quadclass;
using namespace quadclass::arith;
namespace mp = boost::multiprecision;

TEST_CASE("isqrt basics") {
  CHECK(isqrt(Int(0)) == 0);
  CHECK(isqrt(Int(187)) == 13);
  Int big = 4 * mp::pow(Int(13), 8);
  Int r = isqrt(big);
  CHECK(r * r <= big);
  CHECK((r + 1) * (r + 1) > big);
  CHECK_THROWS_AS(isqrt(Int(-1)), std::domain_error);
}

TEST_CASE("isqrt bracketing on sampled range") {
  std::mt19937_64 rng(12345);
  for (int i = 0; i < 2000; ++i) {
    Int n = Int(rng() % 1000000007) * Int(rng() % 1000000007);
    Int r = isqrt(n);
    CHECK(r * r <= n);
    CHECK((r + 1) * (r + 1) > n);
  }
}

TEST_CASE("is_perfect_square") {
  CHECK(is_perfect_square(Int(1)) == Int(1));
  CHECK(!is_perfect_square(Int(2)));
  CHECK(!is_perfect_square(Int(-4)));
  CHECK(is_perfect_square(Int(0)) == Int(0));
  std::mt19937_64 rng(99);
  for (int i = 0; i < 2000; ++i) {
    Int n = Int(rng() % 100000000);
    bool expect = isqrt(n) * isqrt(n) == n;
    CHECK(is_perfect_square(n).has_value() == expect);
  }
}

TEST_CASE("kth_root_floor and is_perfect_power") {
  CHECK(kth_root_floor(Int(1000), 3) == 10);
  CHECK(kth_root_floor(Int(999), 3) == 9);
  CHECK(is_perfect_power(Int(8)) == std::make_pair(Int(2), 3u));
  CHECK(!is_perfect_power(Int(13)));
  CHECK(is_perfect_power(Int(625)) == std::make_pair(Int(5), 4u));
  // maximal exponent, not just any
  CHECK(is_perfect_power(Int(64)) == std::make_pair(Int(2), 6u));
  CHECK_THROWS_AS(is_perfect_power(Int(1)), std::invalid_argument);
}

TEST_CASE("factorize small and spec values") {
  CHECK(factorize(Int(1)).factors.empty());

  auto f = factorize(Int(6347));
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].prime == 11);
  CHECK(f.factors[0].exponent == 1);
  CHECK(f.factors[1].prime == 577);
  CHECK(f.factors[1].exponent == 1);

  // cross-check against the trial-division oracle
  auto oracle = oracles::trial_division(Int(2829123));
  auto got = factorize(Int(2829123));
  REQUIRE(got.factors.size() == oracle.size());
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    CHECK(got.factors[i].prime == oracle[i].first);
    CHECK(got.factors[i].exponent == oracle[i].second);
  }
  CHECK(got.reassemble() == 2829123);
  CHECK(Int(123) * 123 * 187 == 2829123);
}

TEST_CASE("factorize agrees with trial division on a sampled range") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    Int n = Int(2 + rng() % 5000000);
    auto oracle = oracles::trial_division(n);
    auto got = factorize(n);
    REQUIRE(got.factors.size() == oracle.size());
    for (std::size_t k = 0; k < oracle.size(); ++k) {
      CHECK(got.factors[k].prime == oracle[k].first);
      CHECK(got.factors[k].exponent == oracle[k].second);
    }
  }
}

TEST_CASE("factorize handles semiprimes beyond the trial bound") {
  // 99991 * 99989 (both prime, above the 10^4 trial division bound)
  Int n = Int(99991) * 99989;
  auto f = factorize(n);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].prime == 99989);
  CHECK(f.factors[1].prime == 99991);
  CHECK(f.reassemble() == n);
}

TEST_CASE("factorize budget is enforced loudly") {
  CHECK_THROWS_AS(factorize(Int("1000000000000000000000")), budget_error);
  CHECK_THROWS_AS(factorize(Int(0)), std::invalid_argument);
}

TEST_CASE("squarefree_decompose spec values") {
  auto d1 = squarefree_decompose(Int(-2829123));
  CHECK(d1.a == 123);
  CHECK(d1.d == -187);

  auto d2 = squarefree_decompose(Int(-3));
  CHECK(d2.a == 1);
  CHECK(d2.d == -3);

  Int m = 1 - 4 * mp::pow(Int(13), 8);
  auto d3 = squarefree_decompose(m);
  CHECK(d3.d == -6347);
  CHECK(d3.a * d3.a * d3.d == m);

  CHECK_THROWS_AS(squarefree_decompose(Int(0)), std::invalid_argument);
}

TEST_CASE("squarefree_decompose round-trip property") {
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 400; ++i) {
    Int m = Int(1 + rng() % 10000000);
    if (rng() & 1) m = -m;
    auto dec = squarefree_decompose(m);
    CHECK(dec.a >= 1);
    CHECK(dec.a * dec.a * dec.d == m);
    CHECK((dec.d < 0) == (m < 0));
    CHECK(factorize(dec.d).is_squarefree());
  }
}

TEST_CASE("is_probable_prime sanity") {
  CHECK(is_probable_prime(Int(2)));
  CHECK(is_probable_prime(Int(577)));
  CHECK(is_probable_prime(Int(99991)));
  CHECK(!is_probable_prime(Int(1)));
  CHECK(!is_probable_prime(Int(6347)));
  CHECK(is_probable_prime(Int("1000000000000000003")));
}

TEST_CASE("kronecker matches Euler criterion for odd primes") {
  std::mt19937_64 rng(4242);
  const std::uint64_t primes[] = {3, 5, 7, 11, 13, 101, 9973};
  for (std::uint64_t p : primes) {
    for (int i = 0; i < 200; ++i) {
      Int a = Int(rng() % 100000) - 50000;
      CHECK(kronecker(a, Int(p)) == oracles::legendre_euler(a, p));
    }
  }
}

TEST_CASE("kronecker at 2 and signs") {
  CHECK(kronecker(Int(-7), Int(2)) == 1);   // -7 = 1 mod 8
  CHECK(kronecker(Int(-3), Int(2)) == -1);  // -3 = 5 mod 8
  CHECK(kronecker(Int(-4), Int(2)) == 0);
  CHECK(kronecker(Int(-3), Int(7)) == 1);   // -3 = 4 = 2^2 mod 7
  CHECK(kronecker(Int(-3), Int(5)) == -1);
}

TEST_CASE("sqrt_mod_prime") {
  auto r = sqrt_mod_prime(Int(-19), 5);
  REQUIRE(r.has_value());
  CHECK((*r * *r) % 5 == ((-19 % 5) + 5) % 5);
  CHECK(!sqrt_mod_prime(Int(2), 5));
  std::mt19937_64 rng(555);
  for (int i = 0; i < 200; ++i) {
    std::uint64_t p = 99991;
    Int a = Int(rng() % p);
    auto root = sqrt_mod_prime(a, p);
    if (root) {
      CHECK((Int(*root) * *root - a) % p == 0);
    } else {
      CHECK(oracles::legendre_euler(a, p) == -1);
    }
  }
}

TEST_CASE("mod_floor") {
  CHECK(mod_floor(Int(-11), Int(4)) == 1);
  CHECK(mod_floor(Int(-187), Int(4)) == 1);
  CHECK(mod_floor(Int(-6), Int(4)) == 2);
  CHECK(mod_floor(Int(7), Int(4)) == 3);
}
