#pragma once

#include "lieheat/expr.hpp"
#include "lieheat/problem.hpp"
#include "lieheat/rational.hpp"
#include "lieheat/vector_field.hpp"

#include <span>
#include <string>
#include <vector>

namespace lieheat {

enum class Boundary { x_equals_0, t_equals_0, x_to_infinity };
enum class BCKind { dirichlet, neumann_flux };

std::string to_string(Boundary b);

/// Boundary condition. Dirichlet: T = value on `location`. Neumann flux:
/// -kcond T_x = value at x = 0.
struct BCSpec {
  BCKind kind;
  Boundary location;
  Expr value;
};

std::string to_string(const BCSpec& bc);

/// Coefficients over (k1, ..., k6).
using CoeffVector = Eigen::Matrix<Rational, 6, 1>;

/// Homogeneous linear relations over k1..k6 kept in reduced row-echelon form
/// with zero rows dropped, so equal constraint sets compare equal.
class LinearConstraints {
 public:
  LinearConstraints() : rows_(0, 6) {}
  explicit LinearConstraints(const MatrixX<Rational>& rows);

  const MatrixX<Rational>& rows() const noexcept { return rows_; }
  Eigen::Index rank() const noexcept { return rows_.rows(); }
  bool empty() const noexcept { return rows_.rows() == 0; }

  /// Stacks and re-normalizes.
  static LinearConstraints combine(std::span<const LinearConstraints> parts);

  /// One string per row, e.g. "k5=0" or "k3=k6".
  std::vector<std::string> describe_rows() const;
  /// Chains single-parameter rows: "k1=k2=k4=0"; other rows as in describe_rows.
  std::string summary() const;

  friend bool operator==(const LinearConstraints& a, const LinearConstraints& b) {
    return exact_equal(a.rows_, b.rows_);
  }

 private:
  MatrixX<Rational> rows_;
};

/// Turns an expression that must vanish identically in every symbol other
/// than k1..k6 into one row per monomial coefficient.
LinearConstraints extract_constraints(const Expr& residual);

struct ConstraintDerivation {
  std::string label;
  Expr condition;  // invariance expression before the required vanishing
  Expr residual;   // expression whose coefficients must vanish
  LinearConstraints constraints;
  std::string note;
};

ConstraintDerivation derive_boundary(Boundary b, const VectorField& op = general_operator());
ConstraintDerivation derive_bc(const BCSpec& bc, const VectorField& op = general_operator());

LinearConstraints boundary_constraints(Boundary b, const VectorField& op = general_operator());
/// Throws UnsupportedCondition for a flux condition away from x = 0 or a
/// condition placed at infinity.
LinearConstraints bc_constraints(const BCSpec& bc, const VectorField& op = general_operator());

/// Eliminates the pivot parameters of `cs` from an operator written in k1..k6.
VectorField restrict_operator(const VectorField& op, const LinearConstraints& cs);

struct CoeffSubspace {
  std::vector<CoeffVector> basis;
  std::size_t dimension() const noexcept { return basis.size(); }
};

/// Null space of the stacked rows; each basis vector has leading entry 1.
CoeffSubspace solve_constraints(std::span<const LinearConstraints> cs);

/// sum_i v_i X_i.
VectorField operator_from(const CoeffVector& v);
/// "X3 + X6" style label.
std::string describe_operator(const CoeffVector& v);

struct FilterReport {
  Problem problem;
  std::vector<ConstraintDerivation> boundaries;
  std::vector<ConstraintDerivation> conditions;
  LinearConstraints boundary_rows;
  LinearConstraints condition_rows;
  LinearConstraints combined;
  CoeffSubspace admitted;
  std::vector<std::string> notes;
};

/// Boundaries first, then boundary conditions on the restricted operator.
FilterReport filter_problem(Problem p);
/// Boundary conditions applied to the unrestricted operator, then boundaries.
FilterReport filter_problem_conditions_first(Problem p);

std::vector<Boundary> problem_boundaries(Problem p);
std::vector<BCSpec> problem_conditions(Problem p);

}  // namespace lieheat
