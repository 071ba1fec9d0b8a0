#include "lieheat/reduction.hpp"

#include "lieheat/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <tuple>

namespace lieheat {

namespace {

// x^a t^b V^(d)(xi) with xi = x^2 / t, coefficients in the constants.
using JetKey = std::tuple<int, int, int>;
using JetSum = std::map<JetKey, Expr>;

void add(JetSum& s, JetKey k, const Expr& c) {
  if (c.is_zero()) return;
  auto& slot = s[k];
  slot += c;
  if (slot.is_zero()) s.erase(k);
}

// d/dx [x^a t^b V^(d)] = a x^(a-1) t^b V^(d) + 2 x^(a+1) t^(b-1) V^(d+1)
JetSum d_dx(const JetSum& s) {
  JetSum out;
  for (const auto& [k, c] : s) {
    const auto [a, b, d] = k;
    if (a != 0) add(out, {a - 1, b, d}, Expr(a) * c);
    add(out, {a + 1, b - 1, d + 1}, Expr(2) * c);
  }
  return out;
}

// d/dt [x^a t^b V^(d)] = b x^a t^(b-1) V^(d) - x^(a+2) t^(b-2) V^(d+1)
JetSum d_dt(const JetSum& s) {
  JetSum out;
  for (const auto& [k, c] : s) {
    const auto [a, b, d] = k;
    if (b != 0) add(out, {a, b - 1, d}, Expr(b) * c);
    add(out, {a + 2, b - 2, d + 1}, -c);
  }
  return out;
}

BigInt gcd_int(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt r = a % b;
    a = b;
    b = r;
  }
  return a;
}

BigInt lcm_int(const BigInt& a, const BigInt& b) { return a / gcd_int(a, b) * b; }

void scale_all(ReducedODE& ode, const Expr& factor) {
  for (auto* p : {&ode.A, &ode.B, &ode.C})
    for (auto& [k, c] : *p) c = c * factor;
}

std::string poly_string(const XiPolynomial& p, int shift) {
  std::string out;
  int count = 0;
  for (const auto& [power, coef] : p) {
    const int e = power - shift;
    for (auto it = coef.terms().rbegin(); it != coef.terms().rend(); ++it) {
      const Expr single = Expr::term(it->second, it->first);
      std::string base = to_string(single);
      const bool negative = base.front() == '-';
      if (negative) base = base.substr(1);
      std::string term;
      if (e == 0) {
        term = base;
      } else {
        const std::string xi = e > 0 ? (e == 1 ? "xi" : "xi^" + std::to_string(e))
                                     : (e == -1 ? "xi" : "xi^" + std::to_string(-e));
        if (e > 0)
          term = base == "1" ? xi : base + "*" + xi;
        else
          term = base + "/" + xi;
      }
      if (count == 0)
        out = negative ? "-" + term : term;
      else
        out += (negative ? " - " : " + ") + term;
      ++count;
    }
  }
  if (count > 1) out = "(" + out + ")";
  return out;
}

std::string ode_string(const ReducedODE& ode, int shift) {
  std::string out;
  auto part = [&](const XiPolynomial& p, const char* v) {
    if (p.empty()) return;
    const std::string s = poly_string(p, shift);
    if (!out.empty()) out += " + ";
    out += (s == "1" ? std::string() : s + "*") + v;
  };
  part(ode.A, "V''");
  part(ode.B, "V'");
  part(ode.C, "V");
  return out + " = 0";
}

double special_value(Special fn, double eta) {
  switch (fn) {
    case Special::one: return 1.0;
    case Special::erf_eta: return lieheat::erf(eta);
    case Special::gauss_eta: return std::exp(-eta * eta);
  }
  return 0.0;
}

std::string rational_power(const char* base, const Rational& p) {
  if (p == 0) return "";
  if (p == 1) return base;
  return std::string(base) + "^(" + p.str() + ")";
}

// Integral of xi^p exp(-xi/(4 alpha)) d xi for p = -1/2, -3/2, ..., in xi
// space (x_pow holds the xi power and erf/gauss are in y = sqrt(xi/(4 alpha))).
ClosedSum xi_kernel_integral(const Rational& p) {
  if (p == Rational(-1, 2)) {
    // substitution xi = 4 alpha y^2
    return {ClosedTerm{2, 0, 0, Rational(1, 2), Rational(1, 2), Special::erf_eta}};
  }
  // by parts: xi^(p+1) e / (p+1) + 1/(4 alpha (p+1)) * integral(xi^(p+1) e)
  const Rational q = p + 1;
  ClosedSum out{ClosedTerm{Rational(1) / q, q, 0, 0, 0, Special::gauss_eta}};
  for (ClosedTerm term : xi_kernel_integral(q)) {
    term.coef *= Rational(1) / (4 * q);
    term.alpha_pow -= 1;
    out.push_back(term);
  }
  return out;
}

struct Condition {
  // Per-(x power, t power) coefficients of the limiting expression.
  std::map<std::pair<Rational, Rational>, double> parts;
};

double constant_factor(const ClosedTerm& term, double alpha) {
  return to_double(term.coef) * std::pow(alpha, to_double(term.alpha_pow)) *
         std::pow(std::numbers::pi, to_double(term.pi_pow));
}

// x -> 0+ at fixed t > 0.
Condition surface_limit(const ClosedSum& s, double alpha) {
  Condition c;
  for (const auto& term : s) {
    if (term.x_pow < 0) throw ReductionFailure("closed form is singular at x=0");
    if (term.x_pow > 0 || term.fn == Special::erf_eta) continue;
    c.parts[{Rational(0), term.t_pow}] += constant_factor(term, alpha);
  }
  return c;
}

// eta -> infinity, i.e. x -> infinity at fixed t or t -> 0+ at fixed x > 0.
// Gaussian terms vanish, erf tends to one.
Condition far_limit(const ClosedSum& s, double alpha, bool initial) {
  Condition c;
  for (const auto& term : s) {
    if (term.fn == Special::gauss_eta) continue;
    if (initial && term.t_pow > 0) continue;
    if (initial && term.t_pow < 0) throw ReductionFailure("closed form is singular as t->0");
    c.parts[{term.x_pow, term.t_pow}] += constant_factor(term, alpha);
  }
  return c;
}

}  // namespace

std::string describe(const SimilarityChart& c) {
  std::string v = c.n == 0 ? "V = T" : (c.n == 1 ? "V = T/x" : "V = T/x^" + std::to_string(c.n));
  return "xi = x^2/t, " + v + " (source " + describe_operator(c.source) + ")";
}

SimilarityChart similarity_chart(const CoeffVector& v) {
  for (int i : {0, 1, 3, 4}) {
    if (v(i) != 0)
      throw NotScaling("coefficient k" + std::to_string(i + 1) + " = " + v(i).str() +
                       " is outside the scaling family");
  }
  if (v(2) == 0) throw NotScaling("coefficient k3 must be nonzero");
  const Rational n = v(5) / v(2);
  if (n < 0 || denominator(n) != 1)
    throw NotScaling("k6/k3 = " + n.str() + " is not a nonnegative integer");
  SimilarityChart chart;
  chart.n = numerator(n).convert_to<int>();
  chart.source = v;
  return chart;
}

ReducedODE reduce_pde(const SimilarityChart& c) {
  const int n = c.n;
  const JetSum T{{{n, 0, 0}, Expr(1)}};
  JetSum residual = d_dt(T);
  for (const auto& [k, coef] : d_dx(d_dx(T))) add(residual, k, -sym(Symbol::alpha) * coef);

  // Every term must read x^(n-2) * xi^m * V^(d), i.e. x^a t^b with m = -b
  // and a = n - 2 + 2m.
  ReducedODE ode;
  ode.n = n;
  for (const auto& [k, coef] : residual) {
    const auto [a, b, d] = k;
    const int m = -b;
    if (a != n - 2 + 2 * m)
      throw ReductionFailure("residual term x^" + std::to_string(a) + " t^" + std::to_string(b) +
                             " does not factor through x^2/t");
    auto& target = d == 2 ? ode.A : (d == 1 ? ode.B : ode.C);
    target[m] += coef;
  }
  for (auto* p : {&ode.A, &ode.B, &ode.C}) {
    for (auto it = p->begin(); it != p->end();)
      it = it->second.is_zero() ? p->erase(it) : std::next(it);
  }
  if (ode.A.empty()) throw ReductionFailure("reduced equation has no second-order term");

  // Remove the common power of xi.
  int lowest = ode.A.begin()->first;
  for (auto* p : {&ode.B, &ode.C})
    if (!p->empty()) lowest = std::min(lowest, p->begin()->first);
  for (auto* p : {&ode.A, &ode.B, &ode.C}) {
    XiPolynomial shifted;
    for (auto& [k, v] : *p) shifted[k - lowest] = v;
    *p = std::move(shifted);
  }

  // Strip the constants from A's leading coefficient, then clear
  // denominators and common factors.
  const Expr& lead = ode.A.rbegin()->second;
  if (lead.size() != 1) throw ReductionFailure("leading coefficient is not a single term");
  const auto& [lead_mono, lead_coef] = *lead.terms().begin();
  scale_all(ode, Expr::term(1, lead_mono).unit_inverse());

  BigInt den = 1;
  for (auto* p : {&ode.A, &ode.B, &ode.C})
    for (const auto& [k, v] : *p)
      for (const auto& [m, r] : v.terms()) den = lcm_int(den, denominator(r));
  BigInt content = 0;
  for (auto* p : {&ode.A, &ode.B, &ode.C})
    for (const auto& [k, v] : *p)
      for (const auto& [m, r] : v.terms()) content = gcd_int(content, numerator(r * Rational(den)));
  Rational factor = Rational(den) / Rational(content);
  if (ode.A.rbegin()->second.terms().begin()->second < 0) factor = -factor;
  scale_all(ode, Expr(factor));
  return ode;
}

std::string to_string(const ReducedODE& ode) { return ode_string(ode, 0); }

std::string to_string_divided(const ReducedODE& ode) {
  return ode_string(ode, ode.A.empty() ? 0 : ode.A.begin()->first);
}

ClosedForm integrate_reduced(const ReducedODE& ode, int n) {
  if (n != 0 && n != 1)
    throw UnsupportedExponent("closed-form library covers n = 0 and n = 1, got n = " +
                              std::to_string(n));
  if (!ode.C.empty()) throw ReductionFailure("reduced equation has a V term");
  if (ode.A.size() != 1 || ode.A.begin()->first != 1)
    throw ReductionFailure("expected A = a*xi");
  const auto a = ode.A.begin()->second.as_rational();
  if (!a) throw ReductionFailure("A must have a rational coefficient");

  // W'/W = -B/A = -(b0/a)/xi - (b1/a)*alpha_inv with B = b0 + b1 alpha_inv xi.
  Rational b0 = 0, b1 = 0;
  for (const auto& [power, coef] : ode.B) {
    if (power == 0) {
      const auto r = coef.as_rational();
      if (!r) throw ReductionFailure("B(0) must be rational");
      b0 = *r;
    } else if (power == 1) {
      const auto r = (coef * sym(Symbol::alpha)).as_rational();
      if (!r) throw ReductionFailure("B(1) must be a multiple of alpha_inv");
      b1 = *r;
    } else {
      throw ReductionFailure("B must be affine in xi");
    }
  }
  const Rational p = -b0 / *a;
  if (b1 / *a != Rational(1, 4))
    throw ReductionFailure("first integral lacks the exp(-xi/(4 alpha)) kernel");
  if (denominator(p) != 2 || p > 0)
    throw ReductionFailure("kernel exponent " + p.str() + " is not a negative half-integer");

  ClosedForm cf;
  cf.n = n;
  cf.id = n == 0 ? FormulaId::ibvp1_erf : FormulaId::ibvp2_flux;
  // T = x^n V with xi^q -> x^(2q) t^(-q).
  for (ClosedTerm term : xi_kernel_integral(p)) {
    const Rational q = term.x_pow;
    term.x_pow = 2 * q + n;
    term.t_pow = -q;
    cf.basis_c1.push_back(term);
  }
  cf.basis_c2 = {ClosedTerm{1, n, 0, 0, 0, Special::one}};
  return cf;
}

double evaluate(const ClosedSum& s, double x, double t, double alpha) {
  const double eta = x / (2.0 * std::sqrt(alpha * t));
  double sum = 0.0;
  for (const auto& term : s) {
    const double xp = term.x_pow == 0 ? 1.0 : std::pow(x, to_double(term.x_pow));
    sum += constant_factor(term, alpha) * xp * std::pow(t, to_double(term.t_pow)) *
           special_value(term.fn, eta);
  }
  return sum;
}

ClosedSum derivative_x(const ClosedSum& s) {
  ClosedSum out;
  for (const auto& term : s) {
    if (term.x_pow != 0) {
      ClosedTerm d = term;
      d.coef *= term.x_pow;
      d.x_pow -= 1;
      out.push_back(d);
    }
    // eta' = (1/2) alpha^(-1/2) t^(-1/2)
    if (term.fn == Special::erf_eta) {
      ClosedTerm d = term;
      d.pi_pow -= Rational(1, 2);
      d.alpha_pow -= Rational(1, 2);
      d.t_pow -= Rational(1, 2);
      d.fn = Special::gauss_eta;
      out.push_back(d);
    } else if (term.fn == Special::gauss_eta) {
      ClosedTerm d = term;
      d.coef *= Rational(-1, 2);
      d.x_pow += 1;
      d.alpha_pow -= 1;
      d.t_pow -= 1;
      out.push_back(d);
    }
  }
  return out;
}

std::string to_string(const ClosedSum& s) {
  std::string out;
  for (const auto& term : s) {
    std::vector<std::string> factors;
    for (const auto& f : {rational_power("x", term.x_pow), rational_power("t", term.t_pow),
                          rational_power("alpha", term.alpha_pow),
                          rational_power("pi", term.pi_pow)})
      if (!f.empty()) factors.push_back(f);
    if (term.fn == Special::erf_eta) factors.emplace_back("erf(eta)");
    if (term.fn == Special::gauss_eta) factors.emplace_back("exp(-eta^2)");
    std::string body;
    for (const auto& f : factors) body += (body.empty() ? "" : "*") + f;
    const bool negative = term.coef < 0;
    const Rational mag = negative ? Rational(-term.coef) : term.coef;
    std::string t = body.empty() ? mag.str() : (mag == 1 ? body : mag.str() + "*" + body);
    if (out.empty())
      out = negative ? "-" + t : t;
    else
      out += (negative ? " - " : " + ") + t;
  }
  return out.empty() ? "0" : out;
}

double ClosedForm::operator()(double x, double t) const {
  if (!fitted()) throw Error("closed form has unfitted constants");
  if (!(t > 0.0) || !(x >= 0.0)) throw DomainError("closed form needs x >= 0 and t > 0");
  return *c1 * evaluate(basis_c1, x, t, alpha) + *c2 * evaluate(basis_c2, x, t, alpha);
}

std::string to_string(const ClosedForm& cf) {
  auto coef = [](const std::optional<double>& c, const char* symbol) {
    if (!c) return std::string(symbol);
    std::ostringstream os;
    os << std::setprecision(12) << *c;
    return *c < 0 ? "(" + os.str() + ")" : os.str();
  };
  return "T(x,t) = " + coef(cf.c1, "c1") + "*(" + to_string(cf.basis_c1) + ") + " + coef(cf.c2, "c2") +
         "*(" + to_string(cf.basis_c2) + "), eta = x/(2*sqrt(alpha*t))";
}

ClosedForm fit_constants(const ClosedForm& cf, Problem problem, const ThermalConfig& params) {
  if (!(params.alpha > 0.0)) throw NonphysicalParams("alpha must be positive");
  if (!(params.kcond > 0.0)) throw NonphysicalParams("kcond must be positive");
  const double alpha = params.alpha;

  // Each condition contributes one equation per (x power, t power) part.
  struct Equation {
    double a1, a2, rhs;
  };
  std::vector<Equation> eqs;
  auto impose = [&](const Condition& b1, const Condition& b2,
                    std::map<std::pair<Rational, Rational>, double> target) {
    std::map<std::pair<Rational, Rational>, Equation> rows;
    for (const auto& [k, v] : b1.parts) rows[k].a1 += v;
    for (const auto& [k, v] : b2.parts) rows[k].a2 += v;
    for (const auto& [k, v] : target) rows[k].rhs += v;
    for (const auto& [k, e] : rows) eqs.push_back(e);
  };
  const std::pair<Rational, Rational> constant{Rational(0), Rational(0)};

  if (problem == Problem::ibvp1) {
    impose(surface_limit(cf.basis_c1, alpha), surface_limit(cf.basis_c2, alpha),
           {{constant, params.T_s}});
    impose(far_limit(cf.basis_c1, alpha, true), far_limit(cf.basis_c2, alpha, true),
           {{constant, params.T_i}});
    impose(far_limit(cf.basis_c1, alpha, false), far_limit(cf.basis_c2, alpha, false),
           {{constant, params.T_i}});
  } else {
    // -k T_x(0, t) = q0pp
    impose(surface_limit(derivative_x(cf.basis_c1), alpha),
           surface_limit(derivative_x(cf.basis_c2), alpha),
           {{constant, -params.q0pp / params.kcond}});
    impose(far_limit(cf.basis_c1, alpha, true), far_limit(cf.basis_c2, alpha, true), {});
    impose(far_limit(cf.basis_c1, alpha, false), far_limit(cf.basis_c2, alpha, false), {});
  }

  Eigen::MatrixXd m(static_cast<Eigen::Index>(eqs.size()), 2);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(eqs.size()));
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    m(static_cast<Eigen::Index>(i), 0) = eqs[i].a1;
    m(static_cast<Eigen::Index>(i), 1) = eqs[i].a2;
    rhs(static_cast<Eigen::Index>(i)) = eqs[i].rhs;
  }
  const auto qr = m.colPivHouseholderQr();
  if (qr.rank() < 2) throw ReductionFailure("conditions do not determine both constants");
  const Eigen::Vector2d c = qr.solve(rhs);
  const double scale = std::max({1.0, rhs.cwiseAbs().maxCoeff()});
  if ((m * c - rhs).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw ReductionFailure("conditions are inconsistent with the closed form");

  ClosedForm out = cf;
  out.c1 = c(0);
  out.c2 = c(1);
  out.alpha = alpha;
  return out;
}

ReductionReport reduce_problem(Problem p, const ThermalConfig& params) {
  ReductionReport r;
  r.filter = filter_problem(p);
  if (r.filter.admitted.dimension() != 1)
    throw ReductionFailure("expected a one-dimensional admitted subalgebra");
  r.chart = similarity_chart(r.filter.admitted.basis.front());
  r.ode = reduce_pde(r.chart);
  r.general = integrate_reduced(r.ode, r.chart.n);
  r.fitted = fit_constants(r.general, p, params);
  return r;
}

}  // namespace lieheat
