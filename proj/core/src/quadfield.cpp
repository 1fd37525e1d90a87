#include "quadclass/quadfield.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

namespace quadclass::quadfield {

namespace mp = boost::multiprecision;
using arith::is_perfect_square;
using arith::isqrt;
using arith::kronecker;
using arith::mod_floor;

// ---------------------------------------------------------------------------
// RingElement

namespace {

bool order_membership_ok(const Int& u, const Int& v, const Int& d) {
  if (mod_floor(d, 4) == 1) return mod_floor(u - v, 2) == 0;
  return mod_floor(u, 2) == 0 && mod_floor(v, 2) == 0;
}

std::optional<RingElement> try_make_element(const Int& u, const Int& v, const Int& d) {
  if (d >= 0 || mod_floor(d, 4) == 0) return std::nullopt;
  if (!order_membership_ok(u, v, d)) return std::nullopt;
  return RingElement(u, v, d);
}

}  // namespace

RingElement::RingElement(Int u, Int v, Int d)
    : u_(std::move(u)), v_(std::move(v)), d_(std::move(d)) {
  if (d_ >= 0) throw std::invalid_argument("RingElement: d must be negative");
  if (mod_floor(d_, 4) == 0)
    throw std::invalid_argument("RingElement: d = 0 mod 4 is never squarefree");
  if (!order_membership_ok(u_, v_, d_))
    throw std::invalid_argument("RingElement: (" + u_.str() + " + " + v_.str() +
                                "*sqrt(" + d_.str() + "))/2 is not in the maximal order");
}

RingElement RingElement::integer(const Int& t, const Int& d) {
  return RingElement(2 * t, 0, d);
}

Int RingElement::norm() const { return (u_ * u_ - v_ * v_ * d_) / 4; }

Int RingElement::trace() const { return u_; }

RingElement RingElement::conj() const { return RingElement(u_, -v_, d_); }

RingElement RingElement::operator-() const { return RingElement(-u_, -v_, d_); }

RingElement RingElement::operator*(const RingElement& rhs) const {
  if (d_ != rhs.d_)
    throw std::invalid_argument("RingElement: mixed-field product (d = " + d_.str() +
                                " vs " + rhs.d_.str() + ")");
  Int nu = (u_ * rhs.u_ + v_ * rhs.v_ * d_) / 2;
  Int nv = (u_ * rhs.v_ + v_ * rhs.u_) / 2;
  return RingElement(nu, nv, d_);
}

RingElement RingElement::pow(const Int& e) const {
  if (e < 0) throw std::invalid_argument("RingElement::pow: negative exponent");
  RingElement acc = integer(1, d_);
  RingElement base = *this;
  Int k = e;
  while (k > 0) {
    if ((k & 1) != 0) acc = acc * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return acc;
}

std::string RingElement::str() const {
  return "(" + u_.str() + " + " + v_.str() + "*sqrt(" + d_.str() + "))/2";
}

// ---------------------------------------------------------------------------
// QuadForm basics

namespace {

using I128 = __int128;

I128 disc128(std::int64_t a, std::int64_t b, std::int64_t c) {
  return I128(b) * b - I128(4) * a * c;
}

std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c) {
  return std::gcd(std::gcd(a, b), c);
}

}  // namespace

QuadForm::QuadForm(std::int64_t a_, std::int64_t b_, std::int64_t c_) : a(a_), b(b_), c(c_) {
  if (a <= 0 || c <= 0)
    throw std::invalid_argument("QuadForm: outer coefficients must be positive");
  I128 D = disc128(a, b, c);
  if (D >= 0) throw std::invalid_argument("QuadForm: discriminant must be negative");
  if (D < -(I128(1) << 62))
    throw std::invalid_argument("QuadForm: discriminant out of supported range");
  if (gcd3(a, std::abs(b), c) != 1)
    throw std::invalid_argument("QuadForm: form must be primitive");
}

std::int64_t QuadForm::discriminant() const {
  return static_cast<std::int64_t>(disc128(a, b, c));
}

bool QuadForm::is_reduced() const {
  if (std::abs(b) > a || a > c) return false;
  if ((std::abs(b) == a || a == c) && b < 0) return false;
  return true;
}

bool QuadForm::is_principal() const { return a == 1; }

std::string QuadForm::str() const {
  std::ostringstream os;
  os << "(" << a << ", " << b << ", " << c << ")";
  return os.str();
}

QuadForm principal_form(std::int64_t D) {
  if (D >= 0) throw std::invalid_argument("principal_form: discriminant must be negative");
  std::int64_t r = ((D % 4) + 4) % 4;
  if (r == 1) return QuadForm(1, 1, static_cast<std::int64_t>((1 - Int(D)) / 4));
  if (r == 0) return QuadForm(1, 0, static_cast<std::int64_t>(-Int(D) / 4));
  throw std::invalid_argument("principal_form: discriminant must be 0 or 1 mod 4");
}

// Reduction in cpp_int; composition can hand us intermediates well beyond
// the reduced range.
namespace {

struct RawForm {
  Int a, b, c;
};

RawForm reduce_raw(RawForm f) {
  const Int D = f.b * f.b - 4 * f.a * f.c;
  for (;;) {
    if (f.b > f.a || f.b <= -f.a) {
      // translate b into (-a, a]
      Int m = mod_floor(f.b, 2 * f.a);
      if (m > f.a) m -= 2 * f.a;
      f.b = m;
      f.c = (f.b * f.b - D) / (4 * f.a);
    }
    if (f.a > f.c) {
      std::swap(f.a, f.c);
      f.b = -f.b;
    } else {
      break;
    }
  }
  if (f.b < 0 && (f.b == -f.a || f.a == f.c)) f.b = -f.b;
  return f;
}

QuadForm to_form(const RawForm& f) {
  return QuadForm(static_cast<std::int64_t>(f.a), static_cast<std::int64_t>(f.b),
                  static_cast<std::int64_t>(f.c));
}

}  // namespace

QuadForm reduce(const QuadForm& f) {
  RawForm r = reduce_raw({Int(f.a), Int(f.b), Int(f.c)});
  return to_form(r);
}

// ---------------------------------------------------------------------------
// Discriminants and form enumeration

Int fundamental_discriminant(const Int& d) {
  if (d == 0 || d == 1) throw std::invalid_argument("fundamental_discriminant: d = 0, 1");
  Int budget = std::max(Int(mp::abs(d)), arith::default_factor_budget());
  if (!arith::factorize(d, budget).is_squarefree())
    throw std::invalid_argument("fundamental_discriminant: " + d.str() + " is not squarefree");
  return (mod_floor(d, 4) == 1) ? d : 4 * d;
}

std::vector<QuadForm> reduced_forms(const Int& D, const Int& budget) {
  if (D >= 0) throw std::invalid_argument("reduced_forms: discriminant must be negative");
  Int r4 = mod_floor(D, 4);
  if (r4 != 0 && r4 != 1)
    throw std::invalid_argument("reduced_forms: discriminant must be 0 or 1 mod 4");
  if (-D > budget)
    throw budget_error("reduced_forms: |D| = " + Int(-D).str() + " exceeds discriminant budget " +
                       budget.str());
  if (-D > Int(4'000'000'000'000'000LL))
    throw budget_error("reduced_forms: |D| too large for the int64 enumeration");

  const std::int64_t absD = static_cast<std::int64_t>(-D);
  const std::int64_t amax = static_cast<std::int64_t>(isqrt(Int(absD / 3)));
  const int parity = static_cast<int>(r4);  // D odd <=> B odd

  std::vector<QuadForm> out;
  for (std::int64_t A = 1; A <= amax; ++A) {
    std::int64_t B0 = -A + 1;
    if (((B0 % 2 + 2) % 2) != parity) ++B0;
    const std::int64_t den = 4 * A;
    for (std::int64_t B = B0; B <= A; B += 2) {
      std::int64_t num = B * B + absD;  // B^2 - D
      if (num % den != 0) continue;
      std::int64_t C = num / den;
      if (C < A) continue;
      if (B < 0 && A == C) continue;  // counted with B > 0
      if (gcd3(A, std::abs(B), C) != 1) continue;
      out.emplace_back(A, B, C);
    }
  }
  return out;  // already in (A, B) order
}

// ---------------------------------------------------------------------------
// Memoized class-group cache (append-only, shared readers)

namespace {

struct CacheState {
  std::shared_mutex mu;
  std::unordered_map<std::int64_t, ClassGroupSummary> summaries;
  std::unordered_map<std::int64_t, std::int64_t> persisted_h;
  std::string dir;
  std::mutex file_mu;
};

CacheState& cache() {
  static CacheState s;
  return s;
}

void persist_entry(std::int64_t D, std::int64_t h) {
  CacheState& s = cache();
  if (s.dir.empty()) return;
  std::lock_guard<std::mutex> lk(s.file_mu);
  std::ofstream out(s.dir + "/classnum.txt", std::ios::app);
  if (out) out << D << ' ' << h << '\n';
}

ClassGroupSummary summary_for_discriminant(std::int64_t D, const Int& budget) {
  CacheState& s = cache();
  {
    std::shared_lock lk(s.mu);
    auto it = s.summaries.find(D);
    if (it != s.summaries.end()) return it->second;
  }
  ClassGroupSummary sum;
  sum.discriminant = D;
  sum.forms = reduced_forms(Int(D), budget);
  sum.h = static_cast<std::int64_t>(sum.forms.size());
  bool fresh = false;
  {
    std::unique_lock lk(s.mu);
    fresh = s.summaries.emplace(D, sum).second && !s.persisted_h.contains(D);
  }
  if (fresh) persist_entry(D, sum.h);
  return sum;
}

std::int64_t require_negative_squarefree_disc(const Int& d) {
  if (d >= 0) throw std::invalid_argument("class group: d must be negative");
  Int D = fundamental_discriminant(d);
  if (-D > Int(4'000'000'000'000'000LL))
    throw budget_error("class group: |D| = " + Int(-D).str() + " is out of supported range");
  return static_cast<std::int64_t>(D);
}

}  // namespace

void set_persistent_cache_dir(const std::string& dir) {
  CacheState& s = cache();
  std::unique_lock lk(s.mu);
  s.dir = dir;
  std::ifstream in(dir + "/classnum.txt");
  std::int64_t D, h;
  while (in >> D >> h) {
    if (D < 0 && h > 0) s.persisted_h.emplace(D, h);
  }
}

std::int64_t class_number(const Int& d, const Int& budget) {
  std::int64_t D = require_negative_squarefree_disc(d);
  CacheState& s = cache();
  {
    std::shared_lock lk(s.mu);
    auto it = s.summaries.find(D);
    if (it != s.summaries.end()) return it->second.h;
    auto ph = s.persisted_h.find(D);
    if (ph != s.persisted_h.end()) return ph->second;
  }
  return summary_for_discriminant(D, budget).h;
}

ClassGroupSummary class_group(const Int& d, const Int& budget) {
  return summary_for_discriminant(require_negative_squarefree_disc(d), budget);
}

// ---------------------------------------------------------------------------
// Composition

namespace {

// Extended gcd: g = gcd(a, b) with g = s*a + t*b.
Int ext_gcd(const Int& a, const Int& b, Int& s, Int& t) {
  Int old_r = a, r = b;
  Int old_s = 1, ss = 0;
  Int old_t = 0, tt = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * ss;
    old_s = ss;
    ss = tmp;
    tmp = old_t - q * tt;
    old_t = tt;
    tt = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

Int eval_form(const RawForm& f, const Int& x, const Int& y) {
  return f.a * x * x + f.b * x * y + f.c * y * y;
}

// An SL2(Z)-equivalent of g whose leading coefficient is coprime to m.
// Picks (x, y) per prime of m, CRTs, then completes to a unimodular
// change of variables.
RawForm representative_coprime_to(const RawForm& g, const Int& m) {
  if (mp::gcd(g.a, m) == 1) return g;

  Int rad = 1;
  Int x = 0, y = 0;
  {
    auto fact = arith::factorize(m, std::max(Int(mp::abs(m)), arith::default_factor_budget()));
    Int cur_mod = 1;
    for (const auto& [p, e] : fact.factors) {
      (void)e;
      Int xr, yr;
      if (g.a % p != 0) {
        xr = 1;
        yr = 0;
      } else if (g.c % p != 0) {
        xr = 0;
        yr = 1;
      } else {
        xr = 1;  // p | a, p | c, so p cannot divide b (primitive)
        yr = 1;
      }
      if (cur_mod == 1) {
        x = xr;
        y = yr;
      } else {
        Int s, t;
        ext_gcd(cur_mod, p, s, t);  // s*cur_mod + t*p = 1
        x = mod_floor(x * t * p + xr * s * cur_mod, cur_mod * p);
        y = mod_floor(y * t * p + yr * s * cur_mod, cur_mod * p);
      }
      cur_mod *= p;
    }
    rad = cur_mod;
  }
  if (x == 0) x = rad;
  // Adjust y so gcd(x, y) = 1; primes of x dividing rad never divide y,
  // and the rest are dodged by stepping in multiples of rad.
  for (int k = 0; k < 100000; ++k) {
    if (mp::gcd(x, y) == 1) break;
    y += rad;
  }
  if (mp::gcd(x, y) != 1)
    throw std::logic_error("compose: failed to build a coprime representative");

  Int s, t;
  ext_gcd(x, y, s, t);  // s*x + t*y = 1
  // matrix [[x, -t], [y, s]] has determinant 1
  Int beta = -t, delta = s;
  RawForm out;
  out.a = eval_form(g, x, y);
  out.b = 2 * g.a * x * beta + g.b * (x * delta + y * beta) + 2 * g.c * y * delta;
  out.c = eval_form(g, beta, delta);
  return out;
}

}  // namespace

QuadForm compose(const QuadForm& f, const QuadForm& g) {
  const std::int64_t D = f.discriminant();
  if (D != g.discriminant())
    throw std::invalid_argument("compose: discriminants differ (" + std::to_string(D) + " vs " +
                                std::to_string(g.discriminant()) + ")");
  RawForm rf{Int(f.a), Int(f.b), Int(f.c)};
  RawForm rg = representative_coprime_to({Int(g.a), Int(g.b), Int(g.c)}, rf.a);

  // Dirichlet composition of concordant forms: align both middle
  // coefficients on a common B with B = b1 mod 2a1 and B = b2 mod 2a2.
  const Int a1 = rf.a, b1 = rf.b;
  const Int a2 = rg.a, b2 = rg.b;
  Int s, t;
  Int gg = ext_gcd(a1, a2, s, t);
  if (gg != 1) throw std::logic_error("compose: representative not coprime");
  Int diff = (b2 - b1) / 2;  // same parity as the discriminant
  Int k = mod_floor(diff * s, a2);
  Int B = b1 + 2 * a1 * k;
  Int A = a1 * a2;
  Int C = (B * B - Int(D)) / (4 * A);
  return to_form(reduce_raw({A, B, C}));
}

QuadForm form_inverse(const QuadForm& f) { return reduce(QuadForm(f.a, -f.b, f.c)); }

QuadForm form_pow(const QuadForm& f, Int e) {
  if (e < 0) throw std::invalid_argument("form_pow: negative exponent");
  QuadForm acc = principal_form(f.discriminant());
  QuadForm base = reduce(f);
  while (e > 0) {
    if ((e & 1) != 0) acc = compose(acc, base);
    e >>= 1;
    if (e > 0) base = compose(base, base);
  }
  return acc;
}

std::int64_t form_order(const QuadForm& f, const Int& budget) {
  QuadForm r = reduce(f);
  if (r.is_principal()) return 1;
  const std::int64_t h = summary_for_discriminant(r.discriminant(), budget).h;
  // Walk the divisors of h in increasing order (Lagrange: ord | h).
  auto fact = arith::factorize(Int(h), Int(h) + 1);
  std::vector<std::int64_t> divisors{1};
  for (const auto& [p, e] : fact.factors) {
    std::size_t n = divisors.size();
    std::int64_t pe = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pe *= static_cast<std::int64_t>(p);
      for (std::size_t j = 0; j < n; ++j) divisors.push_back(divisors[j] * pe);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  for (std::int64_t s : divisors) {
    if (form_pow(r, s).is_principal()) return s;
  }
  throw std::logic_error("form_order: no divisor of h worked; composition is broken");
}

QuadForm prime_form_above(const Int& p, const Int& D) {
  if (D >= 0) throw std::invalid_argument("prime_form_above: D must be negative");
  Int r4 = mod_floor(D, 4);
  if (r4 != 0 && r4 != 1)
    throw std::invalid_argument("prime_form_above: D must be 0 or 1 mod 4");
  if (p < 2 || p > Int(std::int64_t(1) << 31) || !arith::is_probable_prime(p))
    throw std::invalid_argument("prime_form_above: p must be a (small) prime");
  int chi = kronecker(D, p);
  if (chi == 0)
    throw nonsplit_error("prime " + p.str() + " is ramified in discriminant " + D.str());
  if (chi == -1)
    throw nonsplit_error("prime " + p.str() + " is inert (does not split) in discriminant " +
                         D.str());

  const std::int64_t pp = static_cast<std::int64_t>(p);
  Int B;
  if (pp == 2) {
    B = 1;  // split at 2 means D = 1 mod 8
  } else {
    auto root = arith::sqrt_mod_prime(mod_floor(D, p), static_cast<std::uint64_t>(pp));
    if (!root) throw std::logic_error("prime_form_above: lost the square root mod p");
    Int b0 = Int(*root);
    if (mod_floor(b0, 2) != mod_floor(D, 2)) b0 = p - b0;  // match parity of D
    Int other = 2 * p - b0;
    B = (b0 < other) ? b0 : other;  // smaller nonnegative root mod 4p
  }
  Int C = (B * B - D) / (4 * p);
  if ((B * B - D) % (4 * p) != 0)
    throw std::logic_error("prime_form_above: root does not lift mod 4p");
  return to_form(reduce_raw({p, B, C}));
}

std::int64_t ideal_class_order_above(const Int& p, const Int& d, const Int& budget) {
  Int D = fundamental_discriminant(d);
  return form_order(prime_form_above(p, D), budget);
}

// ---------------------------------------------------------------------------
// Units and power tests

std::vector<RingElement> unit_group(const Int& d) {
  if (d >= 0) throw std::invalid_argument("unit_group: d must be negative");
  std::vector<RingElement> out;
  out.push_back(RingElement::integer(1, d));
  out.push_back(RingElement::integer(-1, d));
  if (d == -1) {
    out.emplace_back(Int(0), Int(2), d);   // i
    out.emplace_back(Int(0), Int(-2), d);  // -i
  } else if (d == -3) {
    out.emplace_back(Int(-1), Int(1), d);   // omega
    out.emplace_back(Int(1), Int(-1), d);   // -omega
    out.emplace_back(Int(-1), Int(-1), d);  // omega^2
    out.emplace_back(Int(1), Int(1), d);    // -omega^2
  }
  return out;
}

namespace {

bool verify_square_candidate(const RingElement& x, const Int& s, const Int& t) {
  auto y = try_make_element(s, t, x.d());
  return y && (*y) * (*y) == x;
}

}  // namespace

bool is_square_in_ring(const RingElement& x) {
  if (x.is_zero()) return true;
  auto root = is_perfect_square(x.norm());
  if (!root) return false;
  const Int r = *root;
  for (int sign = 0; sign < 2; ++sign) {
    const Int c = sign == 0 ? r : -r;
    if (sign == 1 && r == 0) break;
    Int s2 = x.trace() + 2 * c;
    if (s2 < 0) continue;
    auto s_root = is_perfect_square(s2);
    if (!s_root) continue;
    const Int s = *s_root;
    if (s == 0) {
      // pure sqrt(d) candidates: y = t*sqrt(d)/2, so x.v must vanish
      if (x.v() != 0) continue;
      Int num = 2 * x.u();
      if (num % x.d() != 0) continue;
      Int t2 = num / x.d();
      if (t2 < 0) continue;
      auto t_root = is_perfect_square(t2);
      if (!t_root) continue;
      if (verify_square_candidate(x, Int(0), *t_root)) return true;
      if (verify_square_candidate(x, Int(0), -*t_root)) return true;
    } else {
      if (x.v() % s != 0) continue;
      Int t = x.v() / s;
      if (verify_square_candidate(x, s, t)) return true;
      if (verify_square_candidate(x, -s, -t)) return true;
    }
  }
  return false;
}

bool is_pth_power_in_ring(const RingElement& x, const Int& p) {
  if (p < 3 || p > 1000000 || (p & 1) == 0 || !arith::is_probable_prime(p))
    throw std::invalid_argument("is_pth_power_in_ring: p must be an odd prime (p <= 10^6)");
  if (x.is_zero()) return true;
  const Int n = x.norm();
  const unsigned pe = static_cast<unsigned>(p);
  Int m = arith::kth_root_floor(n, pe);
  if (mp::pow(m, pe) != n) return false;
  // any root y has N(y) = m, i.e. u^2 + v^2 |d| = 4m
  const Int absd = -x.d();
  const Int fourm = 4 * m;
  for (Int u = 0; u * u <= fourm; ++u) {
    Int rem = fourm - u * u;
    if (rem % absd != 0) continue;
    auto t = is_perfect_square(rem / absd);
    if (!t) continue;
    for (int su = 0; su < 2; ++su) {
      Int uu = su == 0 ? u : -u;
      if (su == 1 && u == 0) break;
      for (int sv = 0; sv < 2; ++sv) {
        Int vv = sv == 0 ? *t : -*t;
        if (sv == 1 && *t == 0) break;
        auto y = try_make_element(uu, vv, x.d());
        if (y && y->pow(p) == x) return true;
      }
    }
  }
  return false;
}

}  // namespace quadclass::quadfield
