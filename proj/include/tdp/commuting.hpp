#pragma once

#include <optional>
#include <vector>

#include "tdp/matrix.hpp"

namespace tdp {

// basis^-1 * diag(spec) * basis. Any two results over the same basis commute.
Matrix commuting_from_basis(const Matrix& basis, const DiagonalSpec& spec);

// a * b == b * a
bool verify_commuting_pair(const Matrix& a, const Matrix& b);

// If m == basis^-1 * D * basis for some invertible diagonal D, returns D.
std::optional<DiagonalSpec> family_spec(const Matrix& basis, const Matrix& m);

// Matrices sharing one eigenvector basis: a commutative subgroup of GL(d, F_p).
class CommutingFamily {
 public:
  explicit CommutingFamily(Matrix basis);

  [[nodiscard]] const Matrix& basis() const noexcept { return basis_; }
  [[nodiscard]] const std::vector<Matrix>& members() const noexcept { return members_; }
  [[nodiscard]] const std::vector<DiagonalSpec>& specs() const noexcept { return specs_; }

  const Matrix& add(const DiagonalSpec& spec);
  [[nodiscard]] bool contains(const Matrix& m) const;

 private:
  Matrix basis_;
  Matrix basis_inv_;
  std::vector<DiagonalSpec> specs_;
  std::vector<Matrix> members_;
};

}  // namespace tdp
