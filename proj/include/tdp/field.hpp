#pragma once

#include <cstdint>
#include <string>

namespace tdp {

using Element = std::uint32_t;

inline constexpr std::uint32_t kMaxPrime = 65521;
inline constexpr std::uint32_t kDefaultPrime = 251;
inline constexpr std::uint32_t kDefaultDim = 8;

bool is_prime(std::uint64_t n);

// The (prime, dimension) pair every matrix and protocol object is built over.
// p must be prime and at most 65521 (16-bit serialization field); d >= 2.
class FieldParams {
 public:
  FieldParams(std::uint32_t prime, std::uint32_t dim);

  [[nodiscard]] std::uint32_t prime() const noexcept { return prime_; }
  [[nodiscard]] std::uint32_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t entries() const noexcept {
    return static_cast<std::size_t>(dim_) * dim_;
  }

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const FieldParams&, const FieldParams&) = default;

 private:
  std::uint32_t prime_;
  std::uint32_t dim_;
};

// Arithmetic in F_p. Inputs are assumed reduced.
namespace fp {

inline Element add(Element a, Element b, std::uint32_t p) {
  std::uint32_t s = a + b;
  return s >= p ? s - p : s;
}

inline Element sub(Element a, Element b, std::uint32_t p) {
  return a >= b ? a - b : a + p - b;
}

inline Element neg(Element a, std::uint32_t p) { return a == 0 ? 0 : p - a; }

inline Element mul(Element a, Element b, std::uint32_t p) {
  return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p);
}

Element pow(Element base, std::uint64_t exp, std::uint32_t p);

// Multiplicative inverse; a must be nonzero.
Element inv(Element a, std::uint32_t p);

}  // namespace fp

}  // namespace tdp
