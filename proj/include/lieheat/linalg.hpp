#pragma once

#include "lieheat/errors.hpp"
#include "lieheat/expr.hpp"
#include "lieheat/rational.hpp"

#include <Eigen/Core>

#include <vector>

namespace Eigen {

// Lets Expr live in dense Eigen containers. Only storage, block access and
// the explicit loops below are used; no decompositions.
template <>
struct NumTraits<lieheat::Expr> : GenericNumTraits<lieheat::Expr> {
  using Real = lieheat::Expr;
  using NonInteger = lieheat::Expr;
  using Literal = lieheat::Expr;
  using Nested = lieheat::Expr;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 50,
    MulCost = 100
  };
};

}  // namespace Eigen

namespace lieheat {

/// Exact pivoting rules for a scalar type.
template <typename Scalar>
struct ExactField;

template <>
struct ExactField<Rational> {
  static bool is_zero(const Rational& s) { return s == 0; }
  static bool invertible(const Rational& s) { return s != 0; }
  static Rational inverse(const Rational& s) { return Rational(1) / s; }
};

// Laurent polynomials in the invertible constants: only single-term units
// can serve as pivots.
template <>
struct ExactField<Expr> {
  static bool is_zero(const Expr& s) { return s.is_zero(); }
  static bool invertible(const Expr& s) { return s.is_unit(); }
  static Expr inverse(const Expr& s) { return s.unit_inverse(); }
};

template <typename Scalar>
struct RowEchelon {
  MatrixX<Scalar> matrix;              // reduced row-echelon form, zero rows last
  std::vector<Eigen::Index> pivots;    // pivot column of each nonzero row
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

/// Gauss-Jordan elimination in exact arithmetic. Pivot columns scanned left to
/// right up to `ncols` (defaults to all columns); pivot rows chosen top-down.
template <typename Scalar>
RowEchelon<Scalar> reduced_row_echelon(MatrixX<Scalar> m, Eigen::Index ncols = -1) {
  using F = ExactField<Scalar>;
  if (ncols < 0) ncols = m.cols();
  RowEchelon<Scalar> out;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < ncols && row < m.rows(); ++col) {
    Eigen::Index pivot = -1;
    bool nonzero_seen = false;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (F::is_zero(m(r, col))) continue;
      nonzero_seen = true;
      if (F::invertible(m(r, col))) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) {
      if (nonzero_seen) throw Error("elimination needs a non-invertible pivot");
      continue;
    }
    if (pivot != row) m.row(pivot).swap(m.row(row));
    const Scalar inv = F::inverse(m(row, col));
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(row, c) = m(row, c) * inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || F::is_zero(m(r, col))) continue;
      const Scalar factor = m(r, col);
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = m(r, c) - factor * m(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.matrix = std::move(m);
  return out;
}

/// Basis of the null space as columns, each scaled so its first nonzero
/// entry is one.
template <typename Scalar>
MatrixX<Scalar> null_space(const MatrixX<Scalar>& m) {
  using F = ExactField<Scalar>;
  const auto ech = reduced_row_echelon<Scalar>(m);
  const Eigen::Index n = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (auto p : ech.pivots) is_pivot[static_cast<std::size_t>(p)] = true;

  std::vector<VectorX<Scalar>> basis;
  for (Eigen::Index f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    VectorX<Scalar> v = VectorX<Scalar>::Constant(n, Scalar(0));
    v(f) = Scalar(1);
    for (Eigen::Index i = 0; i < ech.rank(); ++i) v(ech.pivots[static_cast<std::size_t>(i)]) = -ech.matrix(i, f);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (F::is_zero(v(i))) continue;
      const Scalar inv = F::inverse(v(i));
      for (Eigen::Index j = 0; j < n; ++j) v(j) = v(j) * inv;
      break;
    }
    basis.push_back(std::move(v));
  }
  MatrixX<Scalar> out(n, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = basis[j];
  return out;
}

}  // namespace lieheat
