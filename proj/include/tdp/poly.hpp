#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tdp/field.hpp"
#include "tdp/matrix.hpp"
#include "tdp/random.hpp"

namespace tdp {

using BigCount = boost::multiprecision::cpp_int;

// f(x) = x^d + c_{d-1} x^{d-1} + ... + c_0, stored as c_0 .. c_{d-1}.
class MonicPoly {
 public:
  MonicPoly(std::uint32_t prime, std::vector<Element> coeffs);

  [[nodiscard]] std::uint32_t prime() const noexcept { return prime_; }
  [[nodiscard]] std::size_t degree() const noexcept { return coeffs_.size(); }
  [[nodiscard]] const std::vector<Element>& coeffs() const noexcept { return coeffs_; }

  // e.g. "x^2 + x + 2"
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const MonicPoly&, const MonicPoly&) = default;

 private:
  std::uint32_t prime_;
  std::vector<Element> coeffs_;
};

// --- counting -------------------------------------------------------------
// Counts take raw (p, d) so they also cover p = 2 and d = 1.

BigCount big_pow(std::uint64_t base, std::uint64_t exp);

// p^(d^2)
BigCount total_matrices(std::uint32_t p, std::uint32_t d);
// prod_{i=0}^{d-1} (p^d - p^i)
BigCount gl_order(std::uint32_t p, std::uint32_t d);
BigCount gl_order(const FieldParams& params);
// p^(d^2) - |GL(d, F_p)|
BigCount singular_count(std::uint32_t p, std::uint32_t d);
// p^(d^2 - d)
BigCount nilpotent_count(std::uint32_t p, std::uint32_t d);
BigCount nilpotent_count(const FieldParams& params);

int mobius(std::uint64_t n);

// (1/d) sum_{r | d} mu(d/r) p^r
BigCount count_irreducible(std::uint32_t d, std::uint32_t p);

// p^d - 2
BigCount ntot_count(std::uint32_t d, std::uint32_t p);

// (p^d - 2) / d rounded down. Only an approximation of count_irreducible;
// kept for reports that print the simplified closed form next to the exact one.
BigCount irreducible_estimate(std::uint32_t d, std::uint32_t p);

// First `digits` significant decimal digits, truncated, e.g. "3.779005647067214e153".
std::string leading_digits(const BigCount& n, unsigned digits);
// Same but rounded half-up on the last digit.
std::string rounded_digits(const BigCount& n, unsigned digits);

// --- irreducibility and orders ---------------------------------------------

// Rabin's test: x^(p^d) = x mod f and gcd(x^(p^(d/t)) - x, f) = 1 for every
// prime t | d.
bool is_irreducible(const MonicPoly& f);

struct IrreducibleDraw {
  MonicPoly poly;
  std::size_t trials;
};

// Draws c_0 from [1, p-1] then c_1 .. c_{d-1} from [0, p-1] until the
// polynomial is irreducible.
IrreducibleDraw random_irreducible(RandomSource& rs, std::uint32_t d, std::uint32_t p);

// Subdiagonal ones, last column -c_0 .. -c_{d-1}. Requires degree >= 2.
Matrix companion_matrix(const MonicPoly& f);

struct PrimePower {
  BigCount prime;
  unsigned exponent;
};
using Factorization = std::vector<PrimePower>;

// Complete factorization by trial division, with a Miller-Rabin shortcut for
// the final cofactor. nullopt when the cofactor left after the trial bound is
// composite.
std::optional<Factorization> factor_u64(std::uint64_t n);

// Multiplicative order of m, given the factorization of p^d - 1.
// Throws NotUnitOrder if m^(p^d - 1) != I, std::invalid_argument if the
// factorization does not multiply out to p^d - 1.
BigCount element_order(const Matrix& m, const Factorization& factorization);

}  // namespace tdp
