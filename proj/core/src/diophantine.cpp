#include "quadclass/diophantine.hpp"

#include <array>

namespace quadclass::dioph {

namespace mp = boost::multiprecision;
using arith::is_perfect_square;

namespace {

Int linear_recurrence(unsigned n, Int a, Int b) {
  if (n == 0) return a;
  for (unsigned i = 1; i < n; ++i) {
    Int next = a + b;
    a = b;
    b = next;
  }
  return b;
}

}  // namespace

Int fibonacci(unsigned n) { return linear_recurrence(n, 0, 1); }

Int lucas(unsigned n) { return linear_recurrence(n, 2, 1); }

std::vector<unsigned> lucas_squares_upto(unsigned bound_index) {
  std::vector<unsigned> out;
  Int a = 2, b = 1;  // L0, L1
  if (is_perfect_square(a)) out.push_back(0);
  for (unsigned n = 1; n <= bound_index; ++n) {
    if (is_perfect_square(b)) out.push_back(n);
    Int next = a + b;
    a = b;
    b = next;
  }
  return out;
}

std::vector<std::pair<Int, unsigned>> solve_x2_plus_1_eq_2kz(const Int& k, unsigned z_max) {
  if (k < 1) throw std::invalid_argument("solve_x2_plus_1_eq_2kz: k must be >= 1");
  std::vector<std::pair<Int, unsigned>> out;
  Int kz = 1;
  for (unsigned z = 1; z <= z_max; ++z) {
    kz *= k;
    if (auto x = is_perfect_square(2 * kz - 1); x && *x >= 1) out.emplace_back(*x, z);
  }
  return out;
}

std::vector<std::pair<Int, Int>> solve_x4_minus_2y2(int rhs, const Int& x_max) {
  if (rhs != 1 && rhs != -1)
    throw std::invalid_argument("solve_x4_minus_2y2: rhs must be +1 or -1");
  std::vector<std::pair<Int, Int>> out;
  for (Int x = 1; x <= x_max; ++x) {
    Int num = x * x * x * x - rhs;
    if (num % 2 != 0) continue;
    if (auto y = is_perfect_square(num / 2); y && *y >= 1) out.emplace_back(x, *y);
  }
  return out;
}

std::vector<std::pair<Int, unsigned>> solve_2x2_plus_1_eq_3y(unsigned y_max) {
  std::vector<std::pair<Int, unsigned>> out;
  Int p3 = 1;
  for (unsigned y = 1; y <= y_max; ++y) {
    p3 *= 3;
    Int num = p3 - 1;  // = 2 x^2
    if (auto x = is_perfect_square(num / 2); x && *x >= 1) out.emplace_back(*x, y);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bugeaud-Shorey classification

BSInstance::BSInstance(int gamma_sq_, Int d1_, Int d2_, Int p_)
    : gamma_sq(gamma_sq_), d1(std::move(d1_)), d2(std::move(d2_)), p(std::move(p_)) {
  if (gamma_sq != 1 && gamma_sq != 2 && gamma_sq != 4)
    throw std::invalid_argument("BSInstance: gamma^2 must be 1, 2 or 4");
  if (d1 < 1 || d2 < 1) throw std::invalid_argument("BSInstance: D1, D2 must be positive");
  if (!arith::is_probable_prime(p)) throw std::invalid_argument("BSInstance: p must be prime");
  if (mp::gcd(d1, d2) != 1) throw std::invalid_argument("BSInstance: gcd(D1, D2) != 1");
  if (d1 % p == 0 || d2 % p == 0)
    throw std::invalid_argument("BSInstance: gcd(D1 D2, p) != 1");
  if ((gamma_sq == 2 || gamma_sq == 4) && d2 % 2 == 0)
    throw std::invalid_argument("BSInstance: D2 must be odd when gamma is sqrt(2) or 2");
  if (p == 2 && gamma_sq != 4)
    throw std::invalid_argument("BSInstance: p = 2 forces gamma = 2");
}

namespace {

struct ETuple {
  int gamma_sq;
  int d1, d2, p;
};

// The seven exceptional quadruples, gamma carried as gamma^2.
constexpr std::array<ETuple, 7> kExceptionalSet = {{
    {4, 13, 3, 2},
    {2, 7, 11, 3},
    {1, 2, 1, 3},
    {4, 7, 1, 2},
    {2, 1, 1, 5},
    {2, 1, 1, 13},
    {4, 1, 3, 7},
}};

}  // namespace

BSClassification classify_bs(const BSInstance& inst, const Int& search_bound) {
  BSClassification out;
  out.search_bound = search_bound;

  for (const auto& e : kExceptionalSet) {
    if (inst.gamma_sq == e.gamma_sq && inst.d1 == e.d1 && inst.d2 == e.d2 && inst.p == e.p) {
      out.in_e = true;
      break;
    }
  }

  // F: (D1, D2, p) = (F_{h1-2eps}, L_{h1+eps}, F_{h1}), h1 >= 2.
  {
    Int fprev = 1, fcur = 1;  // F1, F2
    for (int h1 = 2; fcur <= inst.p; ++h1) {
      if (fcur == inst.p) {
        for (int eps : {+1, -1}) {
          int fi = h1 - 2 * eps;
          int li = h1 + eps;
          if (fi < 0 || li < 0) continue;
          if (fibonacci(static_cast<unsigned>(fi)) == inst.d1 &&
              lucas(static_cast<unsigned>(li)) == inst.d2) {
            out.in_f = BSWitnessF{static_cast<unsigned>(h1), eps};
            break;
          }
        }
        if (out.in_f) break;
      }
      Int next = fprev + fcur;
      fprev = fcur;
      fcur = next;
    }
  }

  // G: (D1, D2, p) = (1, 4 p^h2 - 1, p), h2 >= 1.
  if (inst.d1 == 1) {
    Int pw = 1;
    for (unsigned h2 = 1; 4 * pw * inst.p - 1 <= inst.d2; ++h2) {
      pw *= inst.p;
      if (4 * pw - 1 == inst.d2) {
        out.in_g = h2;
        break;
      }
    }
  }

  // H_gamma: positive s0, t0 with D1 s0^2 + D2 = gamma^2 p^t0 and
  // 3 D1 s0^2 - D2 = +-gamma^2. The second identity pins s0, so the
  // bound only caps t0.
  for (int sign : {+1, -1}) {
    Int num = inst.d2 + sign * inst.gamma_sq;
    if (num <= 0 || num % (3 * inst.d1) != 0) continue;
    auto s0 = is_perfect_square(num / (3 * inst.d1));
    if (!s0 || *s0 < 1) continue;
    Int lhs = inst.d1 * (*s0) * (*s0) + inst.d2;
    if (lhs % inst.gamma_sq != 0) continue;
    Int target = lhs / inst.gamma_sq;
    Int pw = 1;
    for (unsigned t0 = 1; Int(t0) <= out.search_bound; ++t0) {
      pw *= inst.p;
      if (pw == target) {
        out.in_h = BSWitnessH{*s0, t0};
        break;
      }
      if (pw > target) break;
    }
    if (out.in_h) break;
  }

  return out;
}

std::vector<std::pair<Int, unsigned>> count_solutions_d1x2_plus_d2_eq_g2py(
    const BSInstance& inst, unsigned y_max) {
  std::vector<std::pair<Int, unsigned>> out;
  Int pw = 1;
  for (unsigned y = 1; y <= y_max; ++y) {
    pw *= inst.p;
    Int num = inst.gamma_sq * pw - inst.d2;
    if (num <= 0 || num % inst.d1 != 0) continue;
    if (auto x = is_perfect_square(num / inst.d1); x && *x >= 1) out.emplace_back(*x, y);
  }
  return out;
}

bool lemma32_uniqueness(const Int& d1, unsigned e, const Int& q, unsigned y_max) {
  if (d1 < 1 || d1 % 2 == 0)
    throw std::invalid_argument("lemma32_uniqueness: D1 must be a positive odd integer");
  if (e < 1) throw std::invalid_argument("lemma32_uniqueness: e must be >= 1");
  if (q == 3 || !arith::is_probable_prime(q))
    throw std::invalid_argument("lemma32_uniqueness: q must be a prime other than 3");
  const Int d2 = mp::pow(Int(3), 2 * e);
  // D1 x^2 + 3^(2e) = 4 q^y; counts directly, no BSInstance needed since
  // q may divide D1 here only if the caller lied about the inputs.
  unsigned count = 0;
  Int pw = 1;
  for (unsigned y = 1; y <= y_max; ++y) {
    pw *= q;
    Int num = 4 * pw - d2;
    if (num <= 0 || num % d1 != 0) continue;
    if (auto x = is_perfect_square(num / d1); x && *x >= 1) {
      if (++count > 1) return false;
    }
  }
  return true;
}

SquareConditionResult thm6_square_condition(const Int& q, unsigned n, unsigned e) {
  if (n % 4 != 2)
    throw std::invalid_argument("thm6_square_condition: n must be 2 mod 4");
  if (e < 1) throw std::invalid_argument("thm6_square_condition: e must be >= 1");
  SquareConditionResult out;
  Int val;
  if (q == 2) {
    if (e % 2 == 0) {
      out.status = SquareConditionResult::Status::not_applicable;
      return out;
    }
    val = mp::pow(Int(2), n / 2 + 1) - mp::pow(Int(3), e);
  } else {
    Int neg3e = mp::pow(Int(-3), e);
    val = 2 * mp::pow(q, n / 2) - neg3e;
  }
  if (auto r = is_perfect_square(val)) {
    out.status = SquareConditionResult::Status::square;
    out.root = *r;
  } else {
    out.status = SquareConditionResult::Status::not_square;
  }
  return out;
}

}  // namespace quadclass::dioph
