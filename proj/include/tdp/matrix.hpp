#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tdp/field.hpp"
#include "tdp/random.hpp"

namespace tdp {

// Diagonal of eigenvalues, all in [1, p-1].
class DiagonalSpec {
 public:
  DiagonalSpec(FieldParams params, std::vector<Element> eigenvalues);

  [[nodiscard]] const FieldParams& params() const noexcept { return params_; }
  [[nodiscard]] std::span<const Element> eigenvalues() const noexcept { return eigenvalues_; }
  [[nodiscard]] Element operator[](std::size_t i) const { return eigenvalues_[i]; }

  friend bool operator==(const DiagonalSpec&, const DiagonalSpec&) = default;

 private:
  FieldParams params_;
  std::vector<Element> eigenvalues_;
};

// Dense d x d matrix over F_p, row-major. Immutable once built.
class Matrix {
 public:
  // Entries must already be reduced; throws std::invalid_argument otherwise.
  Matrix(FieldParams params, std::vector<Element> entries);

  // Reduces arbitrary signed integers mod p.
  static Matrix from_integers(FieldParams params, std::span<const std::int64_t> values);
  static Matrix from_integers(FieldParams params, std::initializer_list<std::int64_t> values);
  static Matrix zero(FieldParams params);
  static Matrix identity(FieldParams params);
  static Matrix diagonal(const DiagonalSpec& spec);

  [[nodiscard]] const FieldParams& params() const noexcept { return params_; }
  [[nodiscard]] std::uint32_t dim() const noexcept { return params_.dim(); }
  [[nodiscard]] std::uint32_t prime() const noexcept { return params_.prime(); }
  [[nodiscard]] std::span<const Element> entries() const noexcept { return entries_; }

  [[nodiscard]] Element operator()(std::size_t row, std::size_t col) const {
    return entries_[row * params_.dim() + col];
  }

  [[nodiscard]] bool is_identity() const;
  [[nodiscard]] bool is_diagonal() const;
  [[nodiscard]] Element trace() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  FieldParams params_;
  std::vector<Element> entries_;
};

Matrix mul(const Matrix& a, const Matrix& b);
inline Matrix operator*(const Matrix& a, const Matrix& b) { return mul(a, b); }

// Gauss-Jordan over F_p. Throws SingularMatrix when no pivot exists.
Matrix inverse(const Matrix& a);

Element determinant(const Matrix& a);

// a^-1 b^-1 a b
Matrix commutator(const Matrix& a, const Matrix& b);

// c^-1 m c
Matrix conjugate(const Matrix& m, const Matrix& c);

Matrix power(const Matrix& m, const boost::multiprecision::cpp_int& exponent);

// Coefficients of det(xI - A), lowest degree first; size d + 1, last entry 1.
// Computed by Hessenberg reduction.
std::vector<Element> characteristic_polynomial(const Matrix& a);

struct NonsingularDraw {
  Matrix matrix;
  std::size_t rejections;
};

// Fills all d*d entries uniformly from [0, p-1]; redraws the whole matrix
// whenever the determinant is zero.
NonsingularDraw random_nonsingular(RandomSource& rs, const FieldParams& params);

// d independent uniform draws from [1, p-1].
DiagonalSpec random_diagonal(RandomSource& rs, const FieldParams& params);

void require_same_params(const Matrix& a, const Matrix& b);

}  // namespace tdp
