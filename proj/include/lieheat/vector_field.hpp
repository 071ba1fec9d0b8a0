#pragma once

#include "lieheat/expr.hpp"

#include <array>
#include <optional>
#include <string>

namespace lieheat {

/// Infinitesimal generator xi d/dx + tau d/dt + phi d/dT on (x, t, T).
class VectorField {
 public:
  VectorField() = default;
  /// Throws InvalidVectorField if a coefficient depends on T_x, T_t, ...
  VectorField(Expr xi, Expr tau, Expr phi);

  const Expr& xi() const noexcept { return xi_; }
  const Expr& tau() const noexcept { return tau_; }
  const Expr& phi() const noexcept { return phi_; }

  /// Action as a first-order operator on functions of (x, t, T, constants).
  Expr apply(const Expr& f) const;

  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(const Expr& c, const VectorField& v);
  friend bool operator==(const VectorField& a, const VectorField& b) = default;

 private:
  Expr xi_, tau_, phi_;
};

bool is_zero(const VectorField& v);
std::string to_string(const VectorField& v);

enum class Generator { X1 = 1, X2, X3, X4, X5, X6 };

/// The six-dimensional part of the heat-equation symmetry algebra.
VectorField named_generator(Generator id);
inline VectorField named_generator(int i) { return named_generator(static_cast<Generator>(i)); }

/// X_inf = f d/dT; f must depend on x and t only.
VectorField inf_generator(const Expr& f);

/// sum_i coeffs[i] * X_{i+1}.
VectorField linear_combination(const std::array<Expr, 6>& coeffs);
/// k1 X1 + ... + k6 X6 with the symbolic group parameters.
VectorField general_operator();

struct ProlongedField {
  VectorField base;
  int order = 1;
  Expr phi_x;
  Expr phi_t;
  std::optional<Expr> phi_xx;  // order 2 only
};

/// First or second prolongation via the total-derivative formulas.
ProlongedField prolong(const VectorField& field, int order);

/// Prolonged field applied to F. Throws Error when F depends on a jet
/// coordinate with no extended coefficient at this order.
Expr apply_to(const ProlongedField& p, const Expr& f);

/// Restricts to T_t = alpha T_xx and its consequence T_xt = alpha T_xxx.
Expr on_manifold(const Expr& e);

struct SymmetryCheck {
  bool holds = false;
  Expr residual;
  std::string diagnostic;
};

/// Invariance condition of T_t - alpha T_xx under the second prolongation.
SymmetryCheck check_symmetry(const VectorField& field);
inline bool is_symmetry(const VectorField& field) { return check_symmetry(field).holds; }

VectorField commutator(const VectorField& a, const VectorField& b);

/// Z = sum_k coeffs[k] X_{k+1} + f d/dT, with coeffs free of coordinates.
struct AlgebraExpansion {
  bool in_span = false;
  std::array<Expr, 6> coeffs;
  Expr remainder;     // f(x, t) of the X_inf component
  std::string diagnostic;
};

/// Expands a field in the symmetry algebra by exact elimination. `in_span`
/// requires a zero residual and a remainder that solves the heat equation.
AlgebraExpansion expand_in_algebra(const VectorField& z);

}  // namespace lieheat
