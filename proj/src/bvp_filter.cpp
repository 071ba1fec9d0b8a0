#include "lieheat/bvp_filter.hpp"

#include "lieheat/errors.hpp"
#include "lieheat/linalg.hpp"

namespace lieheat {

namespace {

MatrixX<Rational> normalize_rows(const MatrixX<Rational>& rows) {
  if (rows.rows() == 0) return MatrixX<Rational>(0, 6);
  const auto ech = reduced_row_echelon<Rational>(rows);
  return ech.matrix.topRows(ech.rank());
}

bool is_const_value(const Expr& e) {
  for (std::size_t i = 0; i < kSymbolCount; ++i)
    if (is_coordinate(static_cast<Symbol>(i)) && e.depends_on(static_cast<Symbol>(i)))
      return false;
  return true;
}

std::string row_string(const MatrixX<Rational>& rows, Eigen::Index r) {
  Expr lhs;
  int nonzero = 0;
  for (Eigen::Index c = 0; c < 6; ++c) {
    if (rows(r, c) == 0) continue;
    ++nonzero;
    lhs += Expr(rows(r, c)) * sym(group_parameter(static_cast<int>(c)));
  }
  if (nonzero == 1) return to_string(lhs) + "=0";
  // ki - kj = 0 reads as ki=kj
  if (nonzero == 2) {
    Eigen::Index first = -1, second = -1;
    for (Eigen::Index c = 0; c < 6; ++c) {
      if (rows(r, c) == 0) continue;
      (first < 0 ? first : second) = c;
    }
    if (rows(r, first) == 1 && rows(r, second) == -1)
      return "k" + std::to_string(first + 1) + "=k" + std::to_string(second + 1);
  }
  // Expr prints in descending symbol order; keep ascending k order instead.
  std::string out;
  for (Eigen::Index c = 0; c < 6; ++c) {
    if (rows(r, c) == 0) continue;
    const std::string term = to_string(Expr(rows(r, c)) * sym(group_parameter(static_cast<int>(c))));
    if (out.empty())
      out = term;
    else if (term.front() == '-')
      out += " - " + term.substr(1);
    else
      out += " + " + term;
  }
  return out + " = 0";
}

}  // namespace

std::string to_string(Boundary b) {
  switch (b) {
    case Boundary::x_equals_0: return "x=0";
    case Boundary::t_equals_0: return "t=0";
    case Boundary::x_to_infinity: return "x->inf";
  }
  return "?";
}

std::string to_string(const BCSpec& bc) {
  if (bc.kind == BCKind::dirichlet)
    return "T=" + to_string(bc.value) + " at " + to_string(bc.location);
  return "-kcond*T_x=" + to_string(bc.value) + " at " + to_string(bc.location);
}

LinearConstraints::LinearConstraints(const MatrixX<Rational>& rows) {
  if (rows.cols() != 6) throw Error("constraint rows must have 6 columns");
  rows_ = normalize_rows(rows);
}

LinearConstraints LinearConstraints::combine(std::span<const LinearConstraints> parts) {
  Eigen::Index total = 0;
  for (const auto& p : parts) total += p.rank();
  MatrixX<Rational> stacked(total, 6);
  Eigen::Index r = 0;
  for (const auto& p : parts) {
    if (p.rank() == 0) continue;
    stacked.middleRows(r, p.rank()) = p.rows();
    r += p.rank();
  }
  return LinearConstraints(stacked);
}

std::vector<std::string> LinearConstraints::describe_rows() const {
  std::vector<std::string> out;
  for (Eigen::Index r = 0; r < rows_.rows(); ++r) out.push_back(row_string(rows_, r));
  return out;
}

std::string LinearConstraints::summary() const {
  if (empty()) return "(none)";
  std::string zeros;
  std::vector<std::string> others;
  for (Eigen::Index r = 0; r < rows_.rows(); ++r) {
    int nonzero = 0;
    Eigen::Index col = 0;
    for (Eigen::Index c = 0; c < 6; ++c)
      if (rows_(r, c) != 0) ++nonzero, col = c;
    if (nonzero == 1)
      zeros += "k" + std::to_string(col + 1) + "=";
    else
      others.push_back(row_string(rows_, r));
  }
  std::string out = zeros.empty() ? std::string() : zeros + "0";
  for (const auto& o : others) out += (out.empty() ? "" : ", ") + o;
  return out;
}

LinearConstraints extract_constraints(const Expr& residual) {
  const auto groups = collect(residual, [](Symbol s) { return !is_group_parameter(s); });
  MatrixX<Rational> rows = MatrixX<Rational>::Zero(static_cast<Eigen::Index>(groups.size()), 6);
  Eigen::Index r = 0;
  for (const auto& [mono, coef] : groups) {
    for (const auto& [km, c] : coef.terms()) {
      int degree = 0;
      Eigen::Index col = -1;
      for (int i = 0; i < 6; ++i) {
        const auto e = km[index(group_parameter(i))];
        degree += e;
        if (e == 1) col = i;
      }
      if (degree == 0)
        throw Error("invariance condition has a part free of k1..k6: " + to_string(coef));
      if (degree != 1)
        throw Error("invariance condition is nonlinear in k1..k6: " + to_string(coef));
      rows(r, col) += c;
    }
    ++r;
  }
  return LinearConstraints(rows);
}

ConstraintDerivation derive_boundary(Boundary b, const VectorField& op) {
  ConstraintDerivation d;
  d.label = "boundary " + to_string(b);
  switch (b) {
    case Boundary::x_equals_0:
      d.condition = op.apply(sym(Symbol::x));
      d.residual = substitute(d.condition, {{Symbol::x, Expr(0)}});
      break;
    case Boundary::t_equals_0:
      d.condition = op.apply(sym(Symbol::t));
      d.residual = substitute(d.condition, {{Symbol::t, Expr(0)}});
      break;
    case Boundary::x_to_infinity:
      d.note = "no finite-boundary constraint; far-field value enforced when fitting constants";
      return d;
  }
  d.constraints = extract_constraints(d.residual);
  return d;
}

ConstraintDerivation derive_bc(const BCSpec& bc, const VectorField& op) {
  if (!is_const_value(bc.value))
    throw UnsupportedCondition("boundary value must be a constant: " + to_string(bc.value));
  if (bc.location == Boundary::x_to_infinity)
    throw UnsupportedCondition("conditions at infinity are applied during fitting");

  ConstraintDerivation d;
  d.label = "condition " + to_string(bc);
  const Symbol on = bc.location == Boundary::x_equals_0 ? Symbol::x : Symbol::t;
  if (bc.kind == BCKind::dirichlet) {
    d.condition = substitute(op.apply(sym(Symbol::T) - bc.value), {{on, Expr(0)}});
    d.residual = substitute(d.condition, {{Symbol::T, bc.value}});
  } else {
    if (bc.location != Boundary::x_equals_0)
      throw UnsupportedCondition("flux condition is only supported at x=0");
    const Expr k = sym(Symbol::kcond);
    const Expr lhs = k * sym(Symbol::T_x) + bc.value;
    d.condition = substitute(apply_to(prolong(op, 1), lhs), {{Symbol::x, Expr(0)}});
    d.residual = substitute(d.condition, {{Symbol::T_x, -bc.value * sym(Symbol::kcond_inv)}});
  }
  if (d.residual.is_zero()) d.note = "imposes no restriction";
  d.constraints = extract_constraints(d.residual);
  return d;
}

LinearConstraints boundary_constraints(Boundary b, const VectorField& op) {
  return derive_boundary(b, op).constraints;
}

LinearConstraints bc_constraints(const BCSpec& bc, const VectorField& op) {
  return derive_bc(bc, op).constraints;
}

VectorField restrict_operator(const VectorField& op, const LinearConstraints& cs) {
  const auto& rows = cs.rows();
  std::vector<Binding> bindings;
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    Eigen::Index pivot = 0;
    while (rows(r, pivot) == 0) ++pivot;
    Expr value;
    for (Eigen::Index c = pivot + 1; c < 6; ++c)
      if (rows(r, c) != 0) value -= Expr(rows(r, c)) * sym(group_parameter(static_cast<int>(c)));
    bindings.emplace_back(group_parameter(static_cast<int>(pivot)), value);
  }
  return {substitute(op.xi(), bindings), substitute(op.tau(), bindings),
          substitute(op.phi(), bindings)};
}

CoeffSubspace solve_constraints(std::span<const LinearConstraints> cs) {
  const auto all = LinearConstraints::combine(cs);
  CoeffSubspace out;
  const auto basis = null_space<Rational>(all.rank() == 0 ? MatrixX<Rational>(0, 6) : all.rows());
  for (Eigen::Index j = 0; j < basis.cols(); ++j) out.basis.emplace_back(basis.col(j));
  return out;
}

VectorField operator_from(const CoeffVector& v) {
  std::array<Expr, 6> k;
  for (int i = 0; i < 6; ++i) k[static_cast<std::size_t>(i)] = Expr(v(i));
  return linear_combination(k);
}

std::string describe_operator(const CoeffVector& v) {
  std::string out;
  for (int i = 0; i < 6; ++i) {
    if (v(i) == 0) continue;
    std::string term = "X" + std::to_string(i + 1);
    if (v(i) == -1)
      term = "-" + term;
    else if (v(i) != 1)
      term = v(i).str() + "*" + term;
    if (out.empty())
      out = term;
    else if (term.front() == '-')
      out += " - " + term.substr(1);
    else
      out += " + " + term;
  }
  return out.empty() ? "0" : out;
}

std::vector<Boundary> problem_boundaries(Problem) {
  return {Boundary::x_equals_0, Boundary::t_equals_0, Boundary::x_to_infinity};
}

std::vector<BCSpec> problem_conditions(Problem p) {
  if (p == Problem::ibvp1) {
    return {{BCKind::dirichlet, Boundary::t_equals_0, sym(Symbol::T_i)},
            {BCKind::dirichlet, Boundary::x_equals_0, sym(Symbol::T_s)}};
  }
  return {{BCKind::dirichlet, Boundary::t_equals_0, Expr(0)},
          {BCKind::neumann_flux, Boundary::x_equals_0, sym(Symbol::q0pp)}};
}

namespace {

FilterReport finish(FilterReport r) {
  for (const auto& d : r.boundaries)
    if (!d.note.empty()) r.notes.push_back(d.label + ": " + d.note);
  for (const auto& d : r.conditions)
    if (!d.note.empty()) r.notes.push_back(d.label + ": " + d.note);
  const std::array<LinearConstraints, 2> both{r.boundary_rows, r.condition_rows};
  r.combined = LinearConstraints::combine(both);
  r.admitted = solve_constraints(both);
  return r;
}

}  // namespace

FilterReport filter_problem(Problem p) {
  FilterReport r;
  r.problem = p;
  std::vector<LinearConstraints> parts;
  for (Boundary b : problem_boundaries(p)) {
    r.boundaries.push_back(derive_boundary(b));
    parts.push_back(r.boundaries.back().constraints);
  }
  r.boundary_rows = LinearConstraints::combine(parts);

  const VectorField restricted = restrict_operator(general_operator(), r.boundary_rows);
  parts.clear();
  for (const auto& bc : problem_conditions(p)) {
    r.conditions.push_back(derive_bc(bc, restricted));
    parts.push_back(r.conditions.back().constraints);
  }
  r.condition_rows = LinearConstraints::combine(parts);
  return finish(std::move(r));
}

FilterReport filter_problem_conditions_first(Problem p) {
  FilterReport r;
  r.problem = p;
  std::vector<LinearConstraints> parts;
  for (const auto& bc : problem_conditions(p)) {
    r.conditions.push_back(derive_bc(bc));
    parts.push_back(r.conditions.back().constraints);
  }
  r.condition_rows = LinearConstraints::combine(parts);

  const VectorField restricted = restrict_operator(general_operator(), r.condition_rows);
  parts.clear();
  for (Boundary b : problem_boundaries(p)) {
    r.boundaries.push_back(derive_boundary(b, restricted));
    parts.push_back(r.boundaries.back().constraints);
  }
  r.boundary_rows = LinearConstraints::combine(parts);
  return finish(std::move(r));
}

}  // namespace lieheat
