#include "tdp/poly.hpp"

#include <algorithm>
#include <stdexcept>

#include "tdp/errors.hpp"

namespace tdp {

namespace mp = boost::multiprecision;

MonicPoly::MonicPoly(std::uint32_t prime, std::vector<Element> coeffs)
    : prime_(prime), coeffs_(std::move(coeffs)) {
  if (!is_prime(prime)) throw std::invalid_argument(std::to_string(prime) + " is not prime");
  if (coeffs_.empty()) throw std::invalid_argument("monic polynomial needs degree >= 1");
  for (Element c : coeffs_) {
    if (c >= prime_) throw std::invalid_argument("coefficient not reduced mod p");
  }
}

std::string MonicPoly::to_string() const {
  auto term = [](std::size_t k) -> std::string {
    if (k == 0) return "";
    if (k == 1) return "x";
    return "x^" + std::to_string(k);
  };
  std::string s = term(degree());
  for (std::size_t k = degree(); k-- > 0;) {
    const Element c = coeffs_[k];
    if (c == 0) continue;
    s += " + ";
    if (k == 0) {
      s += std::to_string(c);
    } else {
      if (c != 1) s += std::to_string(c);
      s += term(k);
    }
  }
  return s;
}

// --- counting -------------------------------------------------------------

BigCount big_pow(std::uint64_t base, std::uint64_t exp) {
  return mp::pow(BigCount(base), static_cast<unsigned>(exp));
}

BigCount total_matrices(std::uint32_t p, std::uint32_t d) {
  return big_pow(p, static_cast<std::uint64_t>(d) * d);
}

BigCount gl_order(std::uint32_t p, std::uint32_t d) {
  const BigCount q = big_pow(p, d);
  BigCount order = 1;
  BigCount pi = 1;
  for (std::uint32_t i = 0; i < d; ++i) {
    order *= q - pi;
    pi *= p;
  }
  return order;
}

BigCount gl_order(const FieldParams& params) { return gl_order(params.prime(), params.dim()); }

BigCount singular_count(std::uint32_t p, std::uint32_t d) {
  return total_matrices(p, d) - gl_order(p, d);
}

BigCount nilpotent_count(std::uint32_t p, std::uint32_t d) {
  return big_pow(p, static_cast<std::uint64_t>(d) * d - d);
}

BigCount nilpotent_count(const FieldParams& params) {
  return nilpotent_count(params.prime(), params.dim());
}

int mobius(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("mobius(0)");
  int mu = 1;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f != 0) continue;
    n /= f;
    if (n % f == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

BigCount count_irreducible(std::uint32_t d, std::uint32_t p) {
  if (d == 0) throw std::invalid_argument("degree must be >= 1");
  BigCount sum = 0;
  for (std::uint32_t r = 1; r <= d; ++r) {
    if (d % r != 0) continue;
    const int mu = mobius(d / r);
    if (mu == 1) sum += big_pow(p, r);
    if (mu == -1) sum -= big_pow(p, r);
  }
  return sum / d;
}

BigCount ntot_count(std::uint32_t d, std::uint32_t p) { return big_pow(p, d) - 2; }

BigCount irreducible_estimate(std::uint32_t d, std::uint32_t p) {
  return ntot_count(d, p) / d;
}

std::string leading_digits(const BigCount& n, unsigned digits) {
  const std::string s = n.str();
  const std::size_t exponent = s.size() - 1;
  std::string mantissa = s.substr(0, std::min<std::size_t>(digits, s.size()));
  if (mantissa.size() > 1) mantissa.insert(1, ".");
  return mantissa + "e" + std::to_string(exponent);
}

std::string rounded_digits(const BigCount& n, unsigned digits) {
  std::string s = n.str();
  if (s.size() <= digits) return leading_digits(n, digits);
  // add half a unit in the last kept place, then truncate
  const BigCount half = 5 * mp::pow(BigCount(10), static_cast<unsigned>(s.size() - digits - 1));
  const BigCount bumped = n + half;
  const std::string b = bumped.str();
  const std::size_t exponent = b.size() - 1;
  std::string mantissa = b.substr(0, digits);
  if (mantissa.size() > 1) mantissa.insert(1, ".");
  return mantissa + "e" + std::to_string(exponent);
}

// --- polynomial arithmetic over F_p ----------------------------------------

namespace {

// Dense coefficients, lowest degree first, no trailing zeros (zero poly = {}).
using Poly = std::vector<Element>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = fp::sub(a[i], b[i], p);
  trim(a);
  return a;
}

// remainder of a modulo m (m nonzero)
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const Element lead_inv = fp::inv(m.back(), p);
  while (!a.empty() && a.size() - 1 >= dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const Element f = fp::mul(a.back(), lead_inv, p);
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = fp::sub(a[shift + i], fp::mul(f, m[i], p), p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = fp::add(prod[i + j], fp::mul(a[i], b[j], p), p);
    }
  }
  return poly_mod(std::move(prod), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t exp, const Poly& m, std::uint32_t p) {
  Poly result = poly_mod({1}, m, p);
  base = poly_mod(std::move(base), m, p);
  while (exp > 0) {
    if (exp & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    exp >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly as_poly(const MonicPoly& f) {
  Poly out(f.coeffs().begin(), f.coeffs().end());
  out.push_back(1);
  return out;
}

std::vector<std::uint32_t> prime_divisors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t f = 2; f * f <= n; ++f) {
    if (n % f != 0) continue;
    out.push_back(f);
    while (n % f == 0) n /= f;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_irreducible(const MonicPoly& f) {
  const std::uint32_t p = f.prime();
  const std::size_t d = f.degree();
  const Poly modulus = as_poly(f);
  const Poly x = poly_mod({0, 1}, modulus, p);

  // frob[k] = x^(p^k) mod f
  std::vector<Poly> frob(d + 1);
  frob[0] = x;
  for (std::size_t k = 1; k <= d; ++k) frob[k] = poly_powmod(frob[k - 1], p, modulus, p);

  if (frob[d] != x) return false;
  for (std::uint32_t t : prime_divisors(static_cast<std::uint32_t>(d))) {
    const Poly g = poly_gcd(modulus, poly_sub(frob[d / t], x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

IrreducibleDraw random_irreducible(RandomSource& rs, std::uint32_t d, std::uint32_t p) {
  if (d == 0) throw std::invalid_argument("degree must be >= 1");
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  std::size_t trials = 0;
  for (;;) {
    ++trials;
    std::vector<Element> c(d);
    c[0] = field_uniform(rs, 1, p - 1);
    for (std::size_t i = 1; i < d; ++i) c[i] = field_uniform(rs, 0, p - 1);
    MonicPoly f(p, std::move(c));
    if (is_irreducible(f)) return {std::move(f), trials};
  }
}

Matrix companion_matrix(const MonicPoly& f) {
  const std::size_t d = f.degree();
  const FieldParams params(f.prime(), static_cast<std::uint32_t>(d));
  std::vector<Element> e(d * d, 0);
  for (std::size_t i = 0; i + 1 < d; ++i) e[(i + 1) * d + i] = 1;
  for (std::size_t i = 0; i < d; ++i) e[i * d + (d - 1)] = fp::neg(f.coeffs()[i], f.prime());
  return Matrix(params, std::move(e));
}

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

// Deterministic for all 64-bit n with these bases.
bool miller_rabin_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t dd = n - 1;
  unsigned s = 0;
  while ((dd & 1) == 0) {
    dd >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_u64(a, dd, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace

std::optional<Factorization> factor_u64(std::uint64_t n) {
  if (n == 0) return std::nullopt;
  constexpr std::uint64_t kTrialBound = 1ULL << 24;
  Factorization out;
  for (std::uint64_t f = 2; f < kTrialBound && f * f <= n; f += (f == 2 ? 1 : 2)) {
    if (n % f != 0) continue;
    unsigned e = 0;
    while (n % f == 0) {
      n /= f;
      ++e;
    }
    out.push_back({BigCount(f), e});
    if (n > 1 && miller_rabin_u64(n)) break;
  }
  if (n > 1) {
    if (!miller_rabin_u64(n)) return std::nullopt;
    out.push_back({BigCount(n), 1});
  }
  return out;
}

BigCount element_order(const Matrix& m, const Factorization& factorization) {
  BigCount n = big_pow(m.prime(), m.dim()) - 1;
  BigCount product = 1;
  for (const auto& pp : factorization) product *= mp::pow(pp.prime, pp.exponent);
  if (product != n) throw std::invalid_argument("factorization does not multiply to p^d - 1");
  if (!power(m, n).is_identity()) {
    throw NotUnitOrder("m^(p^d - 1) is not the identity");
  }
  for (const auto& pp : factorization) {
    for (unsigned i = 0; i < pp.exponent; ++i) {
      const BigCount candidate = n / pp.prime;
      if (!power(m, candidate).is_identity()) break;
      n = candidate;
    }
  }
  return n;
}

}  // namespace tdp
