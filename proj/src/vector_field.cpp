#include "lieheat/vector_field.hpp"

#include "lieheat/errors.hpp"
#include "lieheat/linalg.hpp"

#include <map>
#include <tuple>

namespace lieheat {

namespace {

bool only_base_coordinates(const Expr& e) {
  for (Symbol s : {Symbol::T_x, Symbol::T_t, Symbol::T_xx, Symbol::T_xt, Symbol::T_tt,
                   Symbol::T_xxx})
    if (e.depends_on(s)) return false;
  return true;
}

const Expr& x_() {
  static const Expr e = sym(Symbol::x);
  return e;
}
const Expr& t_() {
  static const Expr e = sym(Symbol::t);
  return e;
}
const Expr& T_() {
  static const Expr e = sym(Symbol::T);
  return e;
}

}  // namespace

VectorField::VectorField(Expr xi, Expr tau, Expr phi)
    : xi_(std::move(xi)), tau_(std::move(tau)), phi_(std::move(phi)) {
  if (!only_base_coordinates(xi_) || !only_base_coordinates(tau_) ||
      !only_base_coordinates(phi_))
    throw InvalidVectorField("vector field coefficients must depend on x, t, T only");
}

Expr VectorField::apply(const Expr& f) const {
  return xi_ * differentiate(f, Symbol::x) + tau_ * differentiate(f, Symbol::t) +
         phi_ * differentiate(f, Symbol::T);
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  return {a.xi_ + b.xi_, a.tau_ + b.tau_, a.phi_ + b.phi_};
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  return {a.xi_ - b.xi_, a.tau_ - b.tau_, a.phi_ - b.phi_};
}

VectorField operator*(const Expr& c, const VectorField& v) {
  return {c * v.xi_, c * v.tau_, c * v.phi_};
}

bool is_zero(const VectorField& v) {
  return v.xi().is_zero() && v.tau().is_zero() && v.phi().is_zero();
}

std::string to_string(const VectorField& v) {
  std::string out;
  auto part = [&out](const Expr& c, const char* d) {
    if (c.is_zero()) return;
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c) + ")*" + d;
  };
  part(v.xi(), "d/dx");
  part(v.tau(), "d/dt");
  part(v.phi(), "d/dT");
  return out.empty() ? "0" : out;
}

VectorField named_generator(Generator id) {
  const Expr ainv = sym(Symbol::alpha_inv);
  const Expr alpha = sym(Symbol::alpha);
  switch (id) {
    case Generator::X1: return {0, 1, 0};
    case Generator::X2: return {1, 0, 0};
    case Generator::X3: return {x_(), 2 * t_(), 0};
    case Generator::X4: return {2 * t_(), 0, -ainv * x_() * T_()};
    case Generator::X5:
      return {4 * x_() * t_(), 4 * t_() * t_(),
              -ainv * (x_() * x_() + 2 * alpha * t_()) * T_()};
    case Generator::X6: return {0, 0, T_()};
  }
  throw Error("unknown generator id");
}

VectorField inf_generator(const Expr& f) {
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    const auto s = static_cast<Symbol>(i);
    if (is_coordinate(s) && s != Symbol::x && s != Symbol::t && f.depends_on(s))
      throw InvalidVectorField("X_inf coefficient must depend on x and t only, found " +
                               std::string(name(s)));
  }
  return {0, 0, f};
}

VectorField linear_combination(const std::array<Expr, 6>& coeffs) {
  VectorField out;
  for (int i = 0; i < 6; ++i) {
    if (coeffs[static_cast<std::size_t>(i)].is_zero()) continue;
    out = out + coeffs[static_cast<std::size_t>(i)] * named_generator(i + 1);
  }
  return out;
}

VectorField general_operator() {
  std::array<Expr, 6> k;
  for (int i = 0; i < 6; ++i) k[static_cast<std::size_t>(i)] = sym(group_parameter(i));
  return linear_combination(k);
}

ProlongedField prolong(const VectorField& field, int order) {
  if (order != 1 && order != 2) throw Error("prolongation order must be 1 or 2");
  using D = Direction;
  const Expr Tx = sym(Symbol::T_x);
  const Expr Tt = sym(Symbol::T_t);

  ProlongedField p;
  p.base = field;
  p.order = order;
  const Expr dx_xi = total_derivative(field.xi(), D::x);
  const Expr dx_tau = total_derivative(field.tau(), D::x);
  p.phi_x = total_derivative(field.phi(), D::x) - Tx * dx_xi - Tt * dx_tau;
  p.phi_t = total_derivative(field.phi(), D::t) - Tx * total_derivative(field.xi(), D::t) -
            Tt * total_derivative(field.tau(), D::t);
  if (order == 2) {
    p.phi_xx = total_derivative(p.phi_x, D::x) - sym(Symbol::T_xx) * dx_xi -
               sym(Symbol::T_xt) * dx_tau;
  }
  return p;
}

Expr apply_to(const ProlongedField& p, const Expr& f) {
  for (Symbol s : {Symbol::T_xt, Symbol::T_tt, Symbol::T_xxx})
    if (f.depends_on(s))
      throw Error("no extended coefficient for " + std::string(name(s)));
  if (p.order < 2 && f.depends_on(Symbol::T_xx))
    throw Error("T_xx needs the second prolongation");

  Expr out = p.base.apply(f) + p.phi_x * differentiate(f, Symbol::T_x) +
             p.phi_t * differentiate(f, Symbol::T_t);
  if (p.phi_xx) out += *p.phi_xx * differentiate(f, Symbol::T_xx);
  return out;
}

Expr on_manifold(const Expr& e) {
  const Expr alpha = sym(Symbol::alpha);
  return substitute(e, {{Symbol::T_t, alpha * sym(Symbol::T_xx)},
                        {Symbol::T_xt, alpha * sym(Symbol::T_xxx)}});
}

SymmetryCheck check_symmetry(const VectorField& field) {
  static const Expr heat = sym(Symbol::T_t) - sym(Symbol::alpha) * sym(Symbol::T_xx);
  SymmetryCheck out;
  try {
    out.residual = on_manifold(apply_to(prolong(field, 2), heat));
  } catch (const JetOverflow& e) {
    out.diagnostic = e.what();
    return out;
  }
  out.holds = out.residual.is_zero();
  if (!out.holds) out.diagnostic = "residual " + to_string(out.residual);
  return out;
}

VectorField commutator(const VectorField& a, const VectorField& b) {
  return {a.apply(b.xi()) - b.apply(a.xi()), a.apply(b.tau()) - b.apply(a.tau()),
          a.apply(b.phi()) - b.apply(a.phi())};
}

AlgebraExpansion expand_in_algebra(const VectorField& z) {
  const auto coordinate = [](Symbol s) { return is_coordinate(s); };
  // Row key: (component, coordinate monomial); the T-free part of phi is
  // left for the X_inf component.
  using Key = std::tuple<int, Monomial>;
  std::map<Key, std::array<Expr, 7>> rows;
  auto add = [&](const VectorField& v, std::size_t column) {
    const std::array<const Expr*, 3> comps{&v.xi(), &v.tau(), &v.phi()};
    for (int c = 0; c < 3; ++c) {
      for (auto& [mono, coef] : collect(*comps[static_cast<std::size_t>(c)], coordinate)) {
        if (c == 2 && mono[index(Symbol::T)] == 0) continue;
        rows[{c, mono}][column] += coef;
      }
    }
  };
  for (std::size_t k = 0; k < 6; ++k) add(named_generator(static_cast<int>(k) + 1), k);
  add(z, 6);

  MatrixX<Expr> aug(static_cast<Eigen::Index>(rows.size()), 7);
  Eigen::Index r = 0;
  for (const auto& [key, entries] : rows) {
    for (Eigen::Index c = 0; c < 7; ++c) aug(r, c) = entries[static_cast<std::size_t>(c)];
    ++r;
  }

  AlgebraExpansion out;
  const auto ech = reduced_row_echelon<Expr>(aug, 6);
  for (Eigen::Index i = ech.rank(); i < ech.matrix.rows(); ++i) {
    if (!ech.matrix(i, 6).is_zero()) {
      out.diagnostic = "inconsistent expansion: field is not in the span of X1..X6";
      return out;
    }
  }
  for (Eigen::Index i = 0; i < ech.rank(); ++i) {
    const auto col = static_cast<std::size_t>(ech.pivots[static_cast<std::size_t>(i)]);
    out.coeffs[col] = ech.matrix(i, 6);
  }
  for (const auto& c : out.coeffs) {
    for (std::size_t s = 0; s < kSymbolCount; ++s) {
      if (is_coordinate(static_cast<Symbol>(s)) && c.depends_on(static_cast<Symbol>(s))) {
        out.diagnostic = "expansion coefficient depends on a coordinate";
        return out;
      }
    }
  }

  const VectorField rest = z - linear_combination(out.coeffs);
  out.remainder = rest.phi();
  if (!rest.xi().is_zero() || !rest.tau().is_zero() || rest.phi().depends_on(Symbol::T)) {
    out.diagnostic = "nonzero residual " + to_string(rest);
    return out;
  }
  const auto check = check_symmetry(inf_generator(rest.phi()));
  if (!check.holds) {
    out.diagnostic = "X_inf remainder does not solve the heat equation: " + check.diagnostic;
    return out;
  }
  out.in_span = true;
  return out;
}

}  // namespace lieheat
