#pragma once

#include "lieheat/analytic.hpp"
#include "lieheat/bvp_filter.hpp"
#include "lieheat/expr.hpp"
#include "lieheat/problem.hpp"
#include "lieheat/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lieheat {

/// Similarity variables of a scaling operator a (2t d/dt + x d/dx) + m T d/dT:
/// invariant xi = x^2 / t and dependent variable V = T x^(-n), n = m / a.
struct SimilarityChart {
  int n = 0;
  CoeffVector source = CoeffVector::Zero();
};

std::string describe(const SimilarityChart& c);

/// Throws NotScaling when the operator is outside the scaling family.
SimilarityChart similarity_chart(const CoeffVector& v);

/// Polynomial (Laurent, in general) in the similarity variable xi; keys are
/// powers, values coefficients in the constants.
using XiPolynomial = std::map<int, Expr>;

/// Reduced equation A V'' + B V' + C V = 0. Normalized so the coefficients
/// are integers without a common factor and A's leading coefficient is a
/// positive integer. C is empty for the charts with n <= 1.
struct ReducedODE {
  int n = 0;
  XiPolynomial A, B, C;
};

/// "4*xi*V'' + (2 + alpha_inv*xi)*V' = 0".
std::string to_string(const ReducedODE& ode);
/// Same equation divided by the power of xi in A, e.g. "4*V'' + (6/xi + alpha_inv)*V' = 0".
std::string to_string_divided(const ReducedODE& ode);

/// Substitutes T = x^n V(x^2/t) into T_t - alpha T_xx. Throws
/// ReductionFailure if the residual does not factor through xi.
ReducedODE reduce_pde(const SimilarityChart& c);

enum class Special { one, erf_eta, gauss_eta };

/// coef * x^px * t^pt * alpha^pa * pi^ppi * special(eta), eta = x / (2 sqrt(alpha t)),
/// gauss_eta = exp(-eta^2).
struct ClosedTerm {
  Rational coef = 1;
  Rational x_pow = 0;
  Rational t_pow = 0;
  Rational alpha_pow = 0;
  Rational pi_pow = 0;
  Special fn = Special::one;
  friend bool operator==(const ClosedTerm&, const ClosedTerm&) = default;
};

using ClosedSum = std::vector<ClosedTerm>;

double evaluate(const ClosedSum& s, double x, double t, double alpha);
/// Exact x-derivative of a term sum.
ClosedSum derivative_x(const ClosedSum& s);
std::string to_string(const ClosedSum& s);

enum class FormulaId { ibvp1_erf, ibvp2_flux };

/// T(x, t) = c1 * basis_c1 + c2 * basis_c2.
struct ClosedForm {
  int n = 0;
  FormulaId id = FormulaId::ibvp1_erf;
  ClosedSum basis_c1;
  ClosedSum basis_c2;
  std::optional<double> c1, c2;
  double alpha = 0.0;  // set once fitted

  bool fitted() const { return c1.has_value() && c2.has_value(); }
  /// Requires fitted constants.
  double operator()(double x, double t) const;
};

std::string to_string(const ClosedForm& cf);

/// Integrates the reduced equation in closed form. Throws
/// UnsupportedExponent unless n is 0 or 1.
ClosedForm integrate_reduced(const ReducedODE& ode, int n);

/// Fits c1, c2 from the surface condition, the initial limit and the far
/// field of the given problem. Throws NonphysicalParams for alpha <= 0 or
/// kcond <= 0.
ClosedForm fit_constants(const ClosedForm& cf, Problem problem, const ThermalConfig& params);

/// Whole chain: filter, chart, reduction, integration, fit.
struct ReductionReport {
  FilterReport filter;
  SimilarityChart chart;
  ReducedODE ode;
  ClosedForm general;
  ClosedForm fitted;
};

ReductionReport reduce_problem(Problem p, const ThermalConfig& params);

}  // namespace lieheat
