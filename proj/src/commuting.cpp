#include "tdp/commuting.hpp"

#include <stdexcept>

namespace tdp {

Matrix commuting_from_basis(const Matrix& basis, const DiagonalSpec& spec) {
  if (basis.params() != spec.params()) throw std::invalid_argument("basis and spec params differ");
  return inverse(basis) * Matrix::diagonal(spec) * basis;
}

bool verify_commuting_pair(const Matrix& a, const Matrix& b) { return a * b == b * a; }

std::optional<DiagonalSpec> family_spec(const Matrix& basis, const Matrix& m) {
  const Matrix d = basis * m * inverse(basis);
  if (!d.is_diagonal()) return std::nullopt;
  std::vector<Element> eig(d.dim());
  for (std::size_t i = 0; i < d.dim(); ++i) {
    eig[i] = d(i, i);
    if (eig[i] == 0) return std::nullopt;
  }
  return DiagonalSpec(d.params(), std::move(eig));
}

CommutingFamily::CommutingFamily(Matrix basis)
    : basis_(std::move(basis)), basis_inv_(inverse(basis_)) {}

const Matrix& CommutingFamily::add(const DiagonalSpec& spec) {
  if (spec.params() != basis_.params()) throw std::invalid_argument("spec params differ from basis");
  specs_.push_back(spec);
  members_.push_back(basis_inv_ * Matrix::diagonal(spec) * basis_);
  return members_.back();
}

bool CommutingFamily::contains(const Matrix& m) const {
  const Matrix d = basis_ * m * basis_inv_;
  if (!d.is_diagonal()) return false;
  for (std::size_t i = 0; i < d.dim(); ++i) {
    if (d(i, i) == 0) return false;
  }
  return true;
}

}  // namespace tdp
