#include "quadclass/arith.hpp"

#include <algorithm>
#include <map>

namespace quadclass::arith {

namespace mp = boost::multiprecision;

Int Factorization::reassemble() const {
  Int prod = 1;
  for (const auto& f : factors) prod *= mp::pow(f.prime, f.exponent);
  return prod;
}

bool Factorization::is_squarefree() const {
  return std::all_of(factors.begin(), factors.end(),
                     [](const FactorEntry& f) { return f.exponent == 1; });
}

Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt: negative input");
  return mp::sqrt(n);
}

Int kth_root_floor(const Int& n, unsigned k) {
  if (n < 0) throw std::domain_error("kth_root_floor: negative input");
  if (k == 0) throw std::domain_error("kth_root_floor: k must be >= 1");
  if (k == 1 || n <= 1) return n;
  if (k == 2) return mp::sqrt(n);
  // Binary search on the bit length.
  unsigned bits = static_cast<unsigned>(mp::msb(n)) + 1;
  Int lo = Int(1) << ((bits - 1) / k);
  Int hi = (Int(1) << (bits / k + 1)) - 1;
  while (lo < hi) {
    Int mid = (lo + hi + 1) >> 1;
    if (mp::pow(mid, k) <= n)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

std::optional<Int> is_perfect_square(const Int& n) {
  if (n < 0) return std::nullopt;
  // squares mod 16 are 0,1,4,9; filters most inputs before the full root
  unsigned m16 = static_cast<unsigned>(n & 15);
  if (m16 != 0 && m16 != 1 && m16 != 4 && m16 != 9) return std::nullopt;
  Int root = mp::sqrt(n);
  if (root * root == n) return root;
  return std::nullopt;
}

std::optional<std::pair<Int, unsigned>> is_perfect_power(const Int& n) {
  if (n < 2) throw std::invalid_argument("is_perfect_power: n must be >= 2");
  unsigned max_exp = static_cast<unsigned>(mp::msb(n)) + 1;  // 2^e <= n
  for (unsigned e = max_exp; e >= 2; --e) {
    Int r = kth_root_floor(n, e);
    if (r >= 2 && mp::pow(r, e) == n) return std::make_pair(r, e);
  }
  return std::nullopt;
}

namespace {

const std::uint32_t kTrialPrimesBound = 10'000;

const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> sieve(kTrialPrimesBound + 1, true);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kTrialPrimesBound; ++i) {
      if (!sieve[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t(i) * i; j <= kTrialPrimesBound; j += i)
        sieve[static_cast<std::size_t>(j)] = false;
    }
    return out;
  }();
  return primes;
}

bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, unsigned s) {
  Int x = mp::powm(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return false;
  }
  return true;  // composite witness
}

}  // namespace

bool is_probable_prime(const Int& n) {
  if (n < 2) return false;
  static const int kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (int p : kSmall) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Int d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic for n < 3.317e24 (Sorenson-Webster).
  for (int a : kSmall)
    if (miller_rabin_witness(n, a, d, s)) return false;
  return true;
}

namespace {

// Brent-cycle Pollard rho. Deterministic: the polynomial increment walks
// c = 1, 2, 3, ... so the factorization of a given n never varies.
Int pollard_rho_brent(const Int& n, std::uint64_t& work_budget) {
  if ((n & 1) == 0) return 2;
  for (Int c = 1; c < 64; ++c) {
    Int x = 2, y = 2, d = 1, ys = 2;
    Int q = 1;
    std::uint64_t r = 1;
    const std::uint64_t batch = 128;
    while (d == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
      std::uint64_t k = 0;
      while (k < r && d == 1) {
        ys = y;
        std::uint64_t lim = std::min(batch, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          q = q * mp::abs(x - y) % n;
        }
        d = mp::gcd(q, n);
        k += lim;
        if (work_budget < lim) throw unfactored_error(
            "factorize: work budget exhausted on cofactor " + n.str(), n);
        work_budget -= lim;
      }
      r <<= 1;
    }
    if (d == n) {
      // backtrack one step at a time
      d = 1;
      while (d == 1) {
        ys = (ys * ys + c) % n;
        d = mp::gcd(mp::abs(x - ys), n);
      }
    }
    if (d != n) return d;  // nontrivial
    // cycle degenerated; retry with the next increment
  }
  throw unfactored_error("factorize: rho failed on cofactor " + n.str(), n);
}

void factor_recursive(const Int& n, std::map<Int, unsigned>& acc,
                      std::uint64_t& work_budget) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++acc[n];
    return;
  }
  Int d = pollard_rho_brent(n, work_budget);
  factor_recursive(d, acc, work_budget);
  factor_recursive(n / d, acc, work_budget);
}

}  // namespace

Factorization factorize(const Int& n, const Int& budget) {
  Int v = mp::abs(n);
  if (v < 1) throw std::invalid_argument("factorize: |n| must be >= 1");
  if (v > budget)
    throw budget_error("factorize: |n| = " + v.str() + " exceeds budget " + budget.str());

  Factorization out;
  out.value = v;
  Int rest = v;
  for (std::uint32_t p : trial_primes()) {
    if (Int(p) * p > rest) break;
    if (rest % p == 0) {
      unsigned e = 0;
      do {
        rest /= p;
        ++e;
      } while (rest % p == 0);
      out.factors.push_back({Int(p), e});
    }
  }
  if (rest > 1) {
    if (is_probable_prime(rest)) {
      out.factors.push_back({rest, 1});
    } else {
      std::map<Int, unsigned> acc;  // ordered, so output stays deterministic
      std::uint64_t work_budget = 4'000'000;
      factor_recursive(rest, acc, work_budget);
      for (auto& [p, e] : acc) out.factors.push_back({p, e});
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const FactorEntry& a, const FactorEntry& b) { return a.prime < b.prime; });
  return out;
}

SquarefreeDecomposition squarefree_decompose(const Int& m, const Int& budget) {
  if (m == 0) throw std::invalid_argument("squarefree_decompose: m must be nonzero");
  Factorization f = factorize(m, budget);
  Int a = 1, d = 1;
  for (const auto& [p, e] : f.factors) {
    if (e >= 2) a *= mp::pow(p, e / 2);
    if (e % 2 == 1) d *= p;
  }
  if (m < 0) d = -d;
  return {m, a, d};
}

int kronecker(const Int& a_in, const Int& n_in) {
  Int a = a_in, n = n_in;
  if (n == 0) return (mp::abs(a) == 1) ? 1 : 0;
  // (a|2) multiplicand table indexed by a mod 8
  auto tab2 = [](const Int& x) {
    unsigned m = static_cast<unsigned>(mod_floor(x, 8));
    if (m == 1 || m == 7) return 1;
    return -1;  // m == 3 or 5; even handled before the call
  };
  int v = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) v = -v;
  }
  // strip twos from n
  unsigned twos = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++twos;
  }
  if (twos) {
    if ((a & 1) == 0) return 0;
    if (twos % 2 == 1) v *= tab2(a);
  }
  a = mod_floor(a, n);
  while (a != 0) {
    unsigned t = 0;
    while ((a & 1) == 0) {
      a >>= 1;
      ++t;
    }
    if (t % 2 == 1) v *= tab2(n);
    // quadratic reciprocity flip
    if (mod_floor(a, 4) == 3 && mod_floor(n, 4) == 3) v = -v;
    Int tmp = a;
    a = mod_floor(n, a);
    n = tmp;
  }
  return (n == 1) ? v : 0;
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::optional<std::uint64_t> sqrt_mod_prime(const Int& a_in, std::uint64_t p) {
  if (p == 2) {
    std::uint64_t a = static_cast<std::uint64_t>(mod_floor(a_in, 2));
    return a;  // 0 or 1, both are their own square roots mod 2
  }
  std::uint64_t a = static_cast<std::uint64_t>(mod_floor(a_in, Int(p)));
  if (a == 0) return 0;
  if (powmod_u64(a, (p - 1) / 2, p) != 1) return std::nullopt;
  // Tonelli-Shanks
  std::uint64_t q = p - 1, s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod_u64(z, (p - 1) / 2, p) != p - 1) ++z;  // first non-residue
  std::uint64_t m = s;
  std::uint64_t c = powmod_u64(z, q, p);
  std::uint64_t t = powmod_u64(a, q, p);
  std::uint64_t r = powmod_u64(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, t2 = t;
    while (t2 != 1 && i < m) {
      t2 = mulmod_u64(t2, t2, p);
      ++i;
    }
    if (i >= m) return std::nullopt;  // p was not prime after all
    std::uint64_t b = powmod_u64(c, std::uint64_t(1) << (m - i - 1), p);
    m = i;
    c = mulmod_u64(b, b, p);
    t = mulmod_u64(t, c, p);
    r = mulmod_u64(r, b, p);
  }
  return std::min(r, p - r);
}

}  // namespace quadclass::arith
