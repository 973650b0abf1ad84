#pragma once

// Test-only reference routines. They deliberately avoid the library's
// elimination code so they can check it.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "tdp/matrix.hpp"

namespace oracle {

using Grid = std::vector<std::vector<std::int64_t>>;

inline std::int64_t mod(std::int64_t v, std::int64_t p) { return ((v % p) + p) % p; }

inline Grid grid(const tdp::Matrix& m) {
  Grid g(m.dim(), std::vector<std::int64_t>(m.dim()));
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c) g[r][c] = m(r, c);
  return g;
}

inline Grid minor_of(const Grid& a, std::size_t skip_r, std::size_t skip_c) {
  Grid out;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (r == skip_r) continue;
    std::vector<std::int64_t> row;
    for (std::size_t c = 0; c < a.size(); ++c)
      if (c != skip_c) row.push_back(a[r][c]);
    out.push_back(row);
  }
  return out;
}

// Laplace expansion along the first row.
inline std::int64_t cofactor_det(const Grid& a, std::int64_t p) {
  const std::size_t n = a.size();
  if (n == 0) return 1 % p;
  if (n == 1) return mod(a[0][0], p);
  std::int64_t det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    const std::int64_t sign = (c % 2 == 0) ? 1 : -1;
    det = mod(det + sign * mod(a[0][c], p) * cofactor_det(minor_of(a, 0, c), p), p);
  }
  return det;
}

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  // brute force, fine for small p; Fermat otherwise
  a = mod(a, p);
  std::int64_t r = 1, b = a, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

// adj(A) / det(A); empty grid when singular.
inline Grid adjugate_inverse(const Grid& a, std::int64_t p) {
  const std::int64_t det = cofactor_det(a, p);
  if (det == 0) return {};
  const std::int64_t det_inv = inv_mod(det, p);
  const std::size_t n = a.size();
  Grid inv(n, std::vector<std::int64_t>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const std::int64_t sign = ((r + c) % 2 == 0) ? 1 : -1;
      inv[c][r] = mod(sign * cofactor_det(minor_of(a, r, c), p) * det_inv, p);
    }
  return inv;
}

inline Grid naive_mul(const Grid& a, const Grid& b, std::int64_t p) {
  const std::size_t n = a.size();
  Grid out(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc = mod(acc + a[i][k] * b[k][j], p);
      out[i][j] = acc;
    }
  return out;
}

// Characteristic polynomial det(xI - A) by evaluating at x = 0..d and
// Lagrange interpolation. Needs p > d. Lowest degree first.
inline std::vector<std::int64_t> charpoly_interpolated(const tdp::Matrix& m) {
  const std::int64_t p = m.prime();
  const std::size_t d = m.dim();
  const Grid a = grid(m);
  std::vector<std::int64_t> xs, ys;
  for (std::size_t x = 0; x <= d; ++x) {
    Grid shifted = a;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) shifted[r][c] = mod((r == c ? std::int64_t(x) : 0) - a[r][c], p);
    xs.push_back(static_cast<std::int64_t>(x));
    ys.push_back(cofactor_det(shifted, p));
  }
  std::vector<std::int64_t> result(d + 1, 0);
  for (std::size_t i = 0; i <= d; ++i) {
    // basis polynomial prod_{j != i} (x - xj) / (xi - xj)
    std::vector<std::int64_t> basis{1};
    std::int64_t denom = 1;
    for (std::size_t j = 0; j <= d; ++j) {
      if (j == i) continue;
      std::vector<std::int64_t> next(basis.size() + 1, 0);
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] = mod(next[k + 1] + basis[k], p);
        next[k] = mod(next[k] - xs[j] * basis[k], p);
      }
      basis = next;
      denom = mod(denom * (xs[i] - xs[j]), p);
    }
    const std::int64_t scale = mod(ys[i] * inv_mod(denom, p), p);
    for (std::size_t k = 0; k <= d; ++k) result[k] = mod(result[k] + scale * basis[k], p);
  }
  return result;
}

// Multiplicative order by repeated multiplication.
inline std::uint64_t order_by_multiplication(const tdp::Matrix& m, std::uint64_t limit) {
  tdp::Matrix acc = m;
  for (std::uint64_t k = 1; k <= limit; ++k) {
    if (acc.is_identity()) return k;
    acc = acc * m;
  }
  return 0;
}

// Monic polynomials encoded as coefficient vectors c_0..c_{d-1}.
using MonicCoeffs = std::vector<std::int64_t>;

inline std::vector<MonicCoeffs> all_monic(std::int64_t p, std::size_t d) {
  std::vector<MonicCoeffs> out;
  MonicCoeffs c(d, 0);
  for (;;) {
    out.push_back(c);
    std::size_t i = 0;
    while (i < d && c[i] == p - 1) c[i++] = 0;
    if (i == d) break;
    ++c[i];
  }
  return out;
}

inline MonicCoeffs monic_product(const MonicCoeffs& a, const MonicCoeffs& b, std::int64_t p) {
  std::vector<std::int64_t> fa(a), fb(b);
  fa.push_back(1);
  fb.push_back(1);
  std::vector<std::int64_t> prod(fa.size() + fb.size() - 1, 0);
  for (std::size_t i = 0; i < fa.size(); ++i)
    for (std::size_t j = 0; j < fb.size(); ++j) prod[i + j] = mod(prod[i + j] + fa[i] * fb[j], p);
  prod.pop_back();
  return prod;
}

// Sieve: a monic polynomial of degree d is reducible iff it is a product of
// monic polynomials of degrees i and d - i with 1 <= i <= d/2.
inline std::set<MonicCoeffs> irreducibles_by_sieve(std::int64_t p, std::size_t d) {
  std::set<MonicCoeffs> reducible;
  for (std::size_t i = 1; i <= d / 2; ++i)
    for (const auto& a : all_monic(p, i))
      for (const auto& b : all_monic(p, d - i)) reducible.insert(monic_product(a, b, p));
  std::set<MonicCoeffs> out;
  for (const auto& f : all_monic(p, d))
    if (!reducible.count(f)) out.insert(f);
  return out;
}

// Calls f(grid) for each of the p^(d*d) matrices.
template <typename F>
void for_each_matrix(std::int64_t p, std::size_t d, F&& f) {
  std::vector<std::int64_t> e(d * d, 0);
  for (;;) {
    Grid g(d, std::vector<std::int64_t>(d));
    for (std::size_t i = 0; i < d * d; ++i) g[i / d][i % d] = e[i];
    f(g);
    std::size_t i = 0;
    while (i < e.size() && e[i] == p - 1) e[i++] = 0;
    if (i == e.size()) break;
    ++e[i];
  }
}

}  // namespace oracle
