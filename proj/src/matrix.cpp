#include "tdp/matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "tdp/errors.hpp"

namespace tdp {

DiagonalSpec::DiagonalSpec(FieldParams params, std::vector<Element> eigenvalues)
    : params_(params), eigenvalues_(std::move(eigenvalues)) {
  if (eigenvalues_.size() != params_.dim()) {
    throw std::invalid_argument("diagonal spec needs exactly d eigenvalues");
  }
  for (Element e : eigenvalues_) {
    if (e == 0 || e >= params_.prime()) {
      throw std::invalid_argument("eigenvalue must lie in [1, p-1]");
    }
  }
}

Matrix::Matrix(FieldParams params, std::vector<Element> entries)
    : params_(params), entries_(std::move(entries)) {
  if (entries_.size() != params_.entries()) {
    throw std::invalid_argument("matrix needs exactly d*d entries");
  }
  for (Element e : entries_) {
    if (e >= params_.prime()) throw std::invalid_argument("matrix entry not reduced mod p");
  }
}

Matrix Matrix::from_integers(FieldParams params, std::span<const std::int64_t> values) {
  const auto p = static_cast<std::int64_t>(params.prime());
  std::vector<Element> e;
  e.reserve(values.size());
  for (std::int64_t v : values) e.push_back(static_cast<Element>(((v % p) + p) % p));
  return Matrix(params, std::move(e));
}

Matrix Matrix::from_integers(FieldParams params, std::initializer_list<std::int64_t> values) {
  return from_integers(params, std::span<const std::int64_t>(values.begin(), values.size()));
}

Matrix Matrix::zero(FieldParams params) {
  return Matrix(params, std::vector<Element>(params.entries(), 0));
}

Matrix Matrix::identity(FieldParams params) {
  std::vector<Element> e(params.entries(), 0);
  for (std::size_t i = 0; i < params.dim(); ++i) e[i * params.dim() + i] = 1;
  return Matrix(params, std::move(e));
}

Matrix Matrix::diagonal(const DiagonalSpec& spec) {
  const auto& params = spec.params();
  std::vector<Element> e(params.entries(), 0);
  for (std::size_t i = 0; i < params.dim(); ++i) e[i * params.dim() + i] = spec[i];
  return Matrix(params, std::move(e));
}

bool Matrix::is_identity() const {
  const std::size_t d = dim();
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      if ((*this)(r, c) != (r == c ? 1u : 0u)) return false;
    }
  }
  return true;
}

bool Matrix::is_diagonal() const {
  const std::size_t d = dim();
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      if (r != c && (*this)(r, c) != 0) return false;
    }
  }
  return true;
}

Element Matrix::trace() const {
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < dim(); ++i) t += (*this)(i, i);
  return static_cast<Element>(t % prime());
}

void require_same_params(const Matrix& a, const Matrix& b) {
  if (a.params() != b.params()) {
    throw ParamsMismatch("matrices over " + a.params().to_string() + " and " +
                         b.params().to_string());
  }
}

Matrix mul(const Matrix& a, const Matrix& b) {
  require_same_params(a, b);
  const std::size_t d = a.dim();
  const std::uint64_t p = a.prime();
  std::vector<Element> out(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      // entries < 2^16, so d <= 255 products fit comfortably in 64 bits
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < d; ++k) {
        acc += static_cast<std::uint64_t>(a(i, k)) * b(k, j);
      }
      out[i * d + j] = static_cast<Element>(acc % p);
    }
  }
  return Matrix(a.params(), std::move(out));
}

namespace {

using Rows = std::vector<std::vector<Element>>;

Rows to_rows(const Matrix& m) {
  const std::size_t d = m.dim();
  Rows rows(d, std::vector<Element>(d));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) rows[r][c] = m(r, c);
  }
  return rows;
}

Matrix from_rows(const FieldParams& params, const Rows& rows) {
  std::vector<Element> e;
  e.reserve(params.entries());
  for (const auto& row : rows) e.insert(e.end(), row.begin(), row.end());
  return Matrix(params, std::move(e));
}

}  // namespace

Matrix inverse(const Matrix& a) {
  const std::size_t d = a.dim();
  const std::uint32_t p = a.prime();
  Rows work = to_rows(a);
  Rows inv = to_rows(Matrix::identity(a.params()));

  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (pivot < d && work[pivot][col] == 0) ++pivot;
    if (pivot == d) throw SingularMatrix();
    std::swap(work[pivot], work[col]);
    std::swap(inv[pivot], inv[col]);

    const Element scale = fp::inv(work[col][col], p);
    for (std::size_t c = 0; c < d; ++c) {
      work[col][c] = fp::mul(work[col][c], scale, p);
      inv[col][c] = fp::mul(inv[col][c], scale, p);
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || work[r][col] == 0) continue;
      const Element f = work[r][col];
      for (std::size_t c = 0; c < d; ++c) {
        work[r][c] = fp::sub(work[r][c], fp::mul(f, work[col][c], p), p);
        inv[r][c] = fp::sub(inv[r][c], fp::mul(f, inv[col][c], p), p);
      }
    }
  }
  return from_rows(a.params(), inv);
}

Element determinant(const Matrix& a) {
  const std::size_t d = a.dim();
  const std::uint32_t p = a.prime();
  Rows work = to_rows(a);
  Element det = 1;

  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (pivot < d && work[pivot][col] == 0) ++pivot;
    if (pivot == d) return 0;
    if (pivot != col) {
      std::swap(work[pivot], work[col]);
      det = fp::neg(det, p);
    }
    det = fp::mul(det, work[col][col], p);
    const Element pivot_inv = fp::inv(work[col][col], p);
    for (std::size_t r = col + 1; r < d; ++r) {
      if (work[r][col] == 0) continue;
      const Element f = fp::mul(work[r][col], pivot_inv, p);
      for (std::size_t c = col; c < d; ++c) {
        work[r][c] = fp::sub(work[r][c], fp::mul(f, work[col][c], p), p);
      }
    }
  }
  return det;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  require_same_params(a, b);
  return inverse(a) * inverse(b) * a * b;
}

Matrix conjugate(const Matrix& m, const Matrix& c) {
  require_same_params(m, c);
  return inverse(c) * m * c;
}

Matrix power(const Matrix& m, const boost::multiprecision::cpp_int& exponent) {
  if (exponent < 0) throw std::invalid_argument("negative matrix exponent");
  Matrix result = Matrix::identity(m.params());
  Matrix base = m;
  const std::size_t bits = exponent == 0 ? 0 : boost::multiprecision::msb(exponent) + 1;
  for (std::size_t i = 0; i < bits; ++i) {
    if (boost::multiprecision::bit_test(exponent, static_cast<unsigned>(i))) result = result * base;
    if (i + 1 < bits) base = base * base;
  }
  return result;
}

std::vector<Element> characteristic_polynomial(const Matrix& a) {
  const std::size_t n = a.dim();
  const std::uint32_t p = a.prime();
  Rows h = to_rows(a);

  // Similarity reduction to upper Hessenberg form.
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && h[i][m - 1] == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(h[i], h[m]);
      for (std::size_t r = 0; r < n; ++r) std::swap(h[r][i], h[r][m]);
    }
    const Element t_inv = fp::inv(h[m][m - 1], p);
    for (std::size_t r = m + 1; r < n; ++r) {
      const Element u = fp::mul(h[r][m - 1], t_inv, p);
      if (u == 0) continue;
      for (std::size_t c = 0; c < n; ++c) h[r][c] = fp::sub(h[r][c], fp::mul(u, h[m][c], p), p);
      for (std::size_t rr = 0; rr < n; ++rr) h[rr][m] = fp::add(h[rr][m], fp::mul(u, h[rr][r], p), p);
    }
  }

  // chars[k] holds the characteristic polynomial of the leading k x k block.
  std::vector<std::vector<Element>> chars(n + 1);
  chars[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<Element> poly(m + 1, 0);
    const auto& prev = chars[m - 1];
    // (x - h[m-1][m-1]) * prev
    for (std::size_t k = 0; k < prev.size(); ++k) {
      poly[k + 1] = fp::add(poly[k + 1], prev[k], p);
      poly[k] = fp::sub(poly[k], fp::mul(h[m - 1][m - 1], prev[k], p), p);
    }
    Element t = 1;
    for (std::size_t i = 1; i < m; ++i) {
      t = fp::mul(t, h[m - i][m - i - 1], p);
      const Element coef = fp::mul(t, h[m - i - 1][m - 1], p);
      if (coef == 0) continue;
      const auto& lower = chars[m - i - 1];
      for (std::size_t k = 0; k < lower.size(); ++k) {
        poly[k] = fp::sub(poly[k], fp::mul(coef, lower[k], p), p);
      }
    }
    chars[m] = std::move(poly);
  }
  return chars[n];
}

NonsingularDraw random_nonsingular(RandomSource& rs, const FieldParams& params) {
  const Element hi = params.prime() - 1;
  std::size_t rejections = 0;
  for (;;) {
    std::vector<Element> e(params.entries());
    for (auto& x : e) x = field_uniform(rs, 0, hi);
    Matrix m(params, std::move(e));
    if (determinant(m) != 0) return {std::move(m), rejections};
    ++rejections;
  }
}

DiagonalSpec random_diagonal(RandomSource& rs, const FieldParams& params) {
  std::vector<Element> e(params.dim());
  for (auto& x : e) x = field_uniform(rs, 1, params.prime() - 1);
  return DiagonalSpec(params, std::move(e));
}

}  // namespace tdp
