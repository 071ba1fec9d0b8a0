#pragma once

#include "lieheat/errors.hpp"
#include "lieheat/rational.hpp"

#include <cmath>

namespace lieheat {

/// Thomas algorithm for a tridiagonal system. `lower` and `upper` hold the
/// n-1 sub- and super-diagonal entries. No pivoting: intended for diagonally
/// dominant matrices. Throws NumericalFailure on a zero pivot.
template <typename Scalar>
VectorX<Scalar> thomas_solve(const VectorX<Scalar>& lower, const VectorX<Scalar>& diag,
                             const VectorX<Scalar>& upper, const VectorX<Scalar>& rhs) {
  const Eigen::Index n = diag.size();
  if (rhs.size() != n || (n > 0 && (lower.size() != n - 1 || upper.size() != n - 1)))
    throw Error("thomas_solve: inconsistent sizes");
  VectorX<Scalar> c(n), d(n);
  if (n == 0) return d;

  auto pivot_check = [](const Scalar& p) {
    if (p == Scalar(0)) throw NumericalFailure("thomas_solve: zero pivot");
  };
  pivot_check(diag(0));
  c(0) = n > 1 ? Scalar(upper(0) / diag(0)) : Scalar(0);
  d(0) = rhs(0) / diag(0);
  for (Eigen::Index i = 1; i < n; ++i) {
    const Scalar m = diag(i) - lower(i - 1) * c(i - 1);
    pivot_check(m);
    c(i) = i < n - 1 ? Scalar(upper(i) / m) : Scalar(0);
    d(i) = (rhs(i) - lower(i - 1) * d(i - 1)) / m;
  }
  for (Eigen::Index i = n - 2; i >= 0; --i) d(i) -= c(i) * d(i + 1);
  return d;
}

}  // namespace lieheat
