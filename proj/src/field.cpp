#include "tdp/field.hpp"

#include <stdexcept>

namespace tdp {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

FieldParams::FieldParams(std::uint32_t prime, std::uint32_t dim) : prime_(prime), dim_(dim) {
  if (prime > kMaxPrime) {
    throw std::invalid_argument("prime " + std::to_string(prime) + " exceeds 65521");
  }
  if (!is_prime(prime)) {
    throw std::invalid_argument(std::to_string(prime) + " is not prime");
  }
  if (dim < 2) {
    throw std::invalid_argument("dimension must be at least 2");
  }
}

std::string FieldParams::to_string() const {
  return "p=" + std::to_string(prime_) + ", d=" + std::to_string(dim_);
}

namespace fp {

Element pow(Element base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t result = 1 % p;
  std::uint64_t b = base % p;
  while (exp > 0) {
    if (exp & 1) result = result * b % p;
    b = b * b % p;
    exp >>= 1;
  }
  return static_cast<Element>(result);
}

Element inv(Element a, std::uint32_t p) {
  if (a % p == 0) throw std::domain_error("zero has no inverse");
  // extended Euclid on (a, p)
  std::int64_t r0 = p, r1 = a % p;
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (t0 < 0) t0 += p;
  return static_cast<Element>(t0);
}

}  // namespace fp

}  // namespace tdp
