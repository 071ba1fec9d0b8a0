#include "generators.hpp"
#include "lieheat/errors.hpp"
#include "lieheat/parse.hpp"
#include "lieheat/reduction.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace lieheat;
using lieheat::testing::Gen;

namespace {

Expr P(const char* s) { return parse_expr(s); }

CoeffVector coeffs(std::array<int, 6> v) {
  CoeffVector out;
  for (Eigen::Index i = 0; i < 6; ++i) out(i) = v[static_cast<std::size_t>(i)];
  return out;
}

ThermalConfig steel() { return ThermalConfig::aisi304(); }

ThermalConfig flux_steel() {
  ThermalConfig c = steel();
  c.T_i = 0.0;
  c.T_s = 0.0;
  return c;
}

// Independent oracle for the fitted solutions, written with std::erfc.
double oracle_ibvp1(double x, double t, const ThermalConfig& c) {
  return c.T_s + (c.T_i - c.T_s) * std::erf(x / (2.0 * std::sqrt(c.alpha * t)));
}
double oracle_ibvp2(double x, double t, const ThermalConfig& c) {
  const double eta = x / (2.0 * std::sqrt(c.alpha * t));
  return c.q0pp / c.kcond *
         (2.0 * std::sqrt(c.alpha * t / std::numbers::pi) * std::exp(-eta * eta) - x * std::erfc(eta));
}

}  // namespace

TEST(SimilarityChart, Examples) {
  const auto c3 = similarity_chart(coeffs({0, 0, 1, 0, 0, 0}));
  EXPECT_EQ(c3.n, 0);
  const auto c36 = similarity_chart(coeffs({0, 0, 1, 0, 0, 1}));
  EXPECT_EQ(c36.n, 1);
  const auto c362 = similarity_chart(coeffs({0, 0, 1, 0, 0, 2}));
  EXPECT_EQ(c362.n, 2);
  // Scaling the operator does not change the chart.
  EXPECT_EQ(similarity_chart(coeffs({0, 0, 3, 0, 0, 3})).n, 1);
  EXPECT_NE(describe(c36).find("x^2/t"), std::string::npos);
}

TEST(SimilarityChart, RejectsNonScaling) {
  EXPECT_THROW(similarity_chart(coeffs({1, 0, 1, 0, 0, 0})), NotScaling);
  EXPECT_THROW(similarity_chart(coeffs({0, 0, 1, 0, 1, 0})), NotScaling);
  EXPECT_THROW(similarity_chart(coeffs({0, 0, 0, 0, 0, 1})), NotScaling);
  EXPECT_THROW(similarity_chart(coeffs({0, 0, 1, 0, 0, -1})), NotScaling);
  EXPECT_THROW(similarity_chart(coeffs({0, 0, 2, 0, 0, 1})), NotScaling);
  try {
    similarity_chart(coeffs({0, 0, 1, 1, 0, 0}));
    FAIL();
  } catch (const NotScaling& e) {
    EXPECT_NE(std::string(e.what()).find("k4"), std::string::npos);
  }
}

TEST(ReducePde, SurfaceTemperatureChart) {
  const auto ode = reduce_pde(similarity_chart(coeffs({0, 0, 1, 0, 0, 0})));
  EXPECT_EQ(ode.A, (XiPolynomial{{1, Expr(4)}}));
  EXPECT_EQ(ode.B, (XiPolynomial{{0, Expr(2)}, {1, P("alpha_inv")}}));
  EXPECT_TRUE(ode.C.empty());
  EXPECT_EQ(to_string(ode), "4*xi*V'' + (2 + alpha_inv*xi)*V' = 0");
}

TEST(ReducePde, FluxChart) {
  const auto ode = reduce_pde(similarity_chart(coeffs({0, 0, 1, 0, 0, 1})));
  EXPECT_EQ(ode.A, (XiPolynomial{{1, Expr(4)}}));
  EXPECT_EQ(ode.B, (XiPolynomial{{0, Expr(6)}, {1, P("alpha_inv")}}));
  EXPECT_EQ(to_string_divided(ode), "4*V'' + (6/xi + alpha_inv)*V' = 0");
}

TEST(ReducePde, QuadraticChart) {
  // By hand with T = x^2 V: t T_t = -x^2 xi V' and T_xx = 2V + 10 xi V' + 4 xi^2 V'',
  // so the equation is 4 xi^2 V'' + (10 xi + alpha_inv xi^2) V' + 2 V = 0.
  const auto ode = reduce_pde(similarity_chart(coeffs({0, 0, 1, 0, 0, 2})));
  EXPECT_EQ(ode.A, (XiPolynomial{{2, Expr(4)}}));
  EXPECT_EQ(ode.B, (XiPolynomial{{1, Expr(10)}, {2, P("alpha_inv")}}));
  EXPECT_EQ(ode.C, (XiPolynomial{{0, Expr(2)}}));
  EXPECT_THROW(integrate_reduced(ode, 2), UnsupportedExponent);
}

TEST(IntegrateReduced, SurfaceTemperature) {
  const auto ode = reduce_pde(similarity_chart(coeffs({0, 0, 1, 0, 0, 0})));
  const auto cf = integrate_reduced(ode, 0);
  EXPECT_FALSE(cf.fitted());
  // V = 2 c1 sqrt(alpha pi) erf(eta) + c2
  const ClosedSum erf_part{{Rational(2), 0, 0, Rational(1, 2), Rational(1, 2), Special::erf_eta}};
  const ClosedSum one{{Rational(1), 0, 0, 0, 0, Special::one}};
  EXPECT_EQ(cf.basis_c1, erf_part);
  EXPECT_EQ(cf.basis_c2, one);
}

TEST(IntegrateReduced, Flux) {
  const auto ode = reduce_pde(similarity_chart(coeffs({0, 0, 1, 0, 0, 1})));
  const auto cf = integrate_reduced(ode, 1);
  const double alpha = 4.3e-6;
  for (double x : {0.0, 0.01, 0.05}) {
    for (double t : {10.0, 600.0}) {
      const double eta = x / (2.0 * std::sqrt(alpha * t));
      const double expect = -2.0 * std::sqrt(t) * std::exp(-eta * eta) -
                            x * std::sqrt(std::numbers::pi / alpha) * std::erf(eta);
      EXPECT_NEAR(evaluate(cf.basis_c1, x, t, alpha), expect, 1e-12 * std::max(1.0, std::abs(expect)));
      EXPECT_NEAR(evaluate(cf.basis_c2, x, t, alpha), x, 1e-15);
    }
  }
}

TEST(IntegrateReduced, GeneralSolutionSolvesHeatEquation) {
  for (int n : {0, 1}) {
    const auto cf = integrate_reduced(reduce_pde(similarity_chart(coeffs({0, 0, 1, 0, 0, n}))), n);
    const double alpha = 1e-2;
    for (const ClosedSum* b : {&cf.basis_c1, &cf.basis_c2}) {
      auto T = [&](double x, double t) { return evaluate(*b, x, t, alpha); };
      const double r1 = pde_residual(T, alpha, 0.3, 2.0, 0.02);
      const double r2 = pde_residual(T, alpha, 0.3, 2.0, 0.01);
      // linear basis members are reproduced exactly by the stencil
      if (r1 == 0.0) {
        EXPECT_EQ(r2, 0.0);
      } else {
        EXPECT_GE(r1 / r2, 3.0);
        EXPECT_LE(r1 / r2, 5.0);
      }
    }
  }
}

TEST(IntegrateReduced, ZeroFirstConstantGivesConstant) {
  auto cf = integrate_reduced(reduce_pde(similarity_chart(coeffs({0, 0, 1, 0, 0, 0}))), 0);
  cf.c1 = 0.0;
  cf.c2 = 42.0;
  cf.alpha = 1e-5;
  EXPECT_DOUBLE_EQ(cf(0.1, 5.0), 42.0);
  EXPECT_DOUBLE_EQ(cf(0.0, 100.0), 42.0);
}

TEST(DerivativeX, MatchesFiniteDifference) {
  const auto cf = integrate_reduced(reduce_pde(similarity_chart(coeffs({0, 0, 1, 0, 0, 1}))), 1);
  const double alpha = 1e-3, t = 7.0, h = 1e-5;
  const auto d = derivative_x(cf.basis_c1);
  for (double x : {0.01, 0.1, 0.2}) {
    const double fd = (evaluate(cf.basis_c1, x + h, t, alpha) - evaluate(cf.basis_c1, x - h, t, alpha)) / (2 * h);
    EXPECT_NEAR(evaluate(d, x, t, alpha), fd, 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST(FitConstants, SurfaceTemperature) {
  const ThermalConfig c = steel();
  const auto r = reduce_problem(Problem::ibvp1, c);
  ASSERT_TRUE(r.fitted.fitted());
  const double c1 = (c.T_i - c.T_s) / (2.0 * std::sqrt(c.alpha * std::numbers::pi));
  EXPECT_NEAR(*r.fitted.c1, c1, 1e-12 * std::abs(c1));
  EXPECT_NEAR(*r.fitted.c2, c.T_s, 1e-9);
  for (double x : {0.0, 0.001, 0.01, 0.05, 0.2})
    for (double t : {1.0, 60.0, 3600.0})
      EXPECT_NEAR(r.fitted(x, t), 900.0 - 600.0 * std::erf(x / (2.0 * std::sqrt(c.alpha * t))), 1e-9);
}

TEST(FitConstants, SurfaceTemperatureDegenerate) {
  ThermalConfig c = steel();
  c.T_i = c.T_s = 500.0;
  const auto r = reduce_problem(Problem::ibvp1, c);
  // relative to the size c1 takes for a 500 K contrast
  const double c1_scale = 500.0 / (2.0 * std::sqrt(c.alpha * std::numbers::pi));
  EXPECT_NEAR(*r.fitted.c1, 0.0, 1e-12 * c1_scale);
  for (double x : {0.0, 0.3}) EXPECT_NEAR(r.fitted(x, 10.0), 500.0, 1e-12);
}

TEST(FitConstants, Flux) {
  const ThermalConfig c = flux_steel();
  const auto r = reduce_problem(Problem::ibvp2, c);
  EXPECT_NEAR(*r.fitted.c2, -c.q0pp / c.kcond, 1e-9);
  EXPECT_NEAR(*r.fitted.c1, -(c.q0pp / c.kcond) * std::sqrt(c.alpha / std::numbers::pi), 1e-12);
  for (double t : {1.0, 60.0, 3600.0})
    EXPECT_NEAR(r.fitted(0.0, t), 2.0 * 5000.0 / 18.2 * std::sqrt(c.alpha * t / std::numbers::pi), 1e-10);
  for (double x : {0.001, 0.01, 0.05})
    for (double t : {60.0, 3600.0}) EXPECT_NEAR(r.fitted(x, t), oracle_ibvp2(x, t, c), 1e-9);
}

TEST(FitConstants, NonphysicalParams) {
  const auto cf = integrate_reduced(reduce_pde(similarity_chart(coeffs({0, 0, 1, 0, 0, 0}))), 0);
  ThermalConfig c = steel();
  c.alpha = 0.0;
  EXPECT_THROW(fit_constants(cf, Problem::ibvp1, c), NonphysicalParams);
  c = steel();
  c.kcond = -1.0;
  EXPECT_THROW(fit_constants(cf, Problem::ibvp1, c), NonphysicalParams);
}

TEST(FitConstants, OwnBoundaryConditions) {
  const ThermalConfig c1 = steel();
  const auto r1 = reduce_problem(Problem::ibvp1, c1);
  for (double t : {0.5, 60.0, 3600.0}) EXPECT_NEAR(r1.fitted(0.0, t), c1.T_s, 1e-10);
  // Initial and far-field limits.
  EXPECT_NEAR(r1.fitted(0.05, 1e-6), c1.T_i, 1e-10);
  EXPECT_NEAR(r1.fitted(2.0, 3600.0), c1.T_i, 1e-10);

  const ThermalConfig c2 = flux_steel();
  const auto r2 = reduce_problem(Problem::ibvp2, c2);
  for (double t : {0.5, 60.0, 3600.0}) {
    const double dTdx = *r2.fitted.c1 * evaluate(derivative_x(r2.fitted.basis_c1), 0.0, t, c2.alpha) +
                        *r2.fitted.c2 * evaluate(derivative_x(r2.fitted.basis_c2), 0.0, t, c2.alpha);
    EXPECT_NEAR(-c2.kcond * dTdx / c2.q0pp, 1.0, 1e-10);
  }
  EXPECT_NEAR(r2.fitted(0.05, 1e-6), 0.0, 1e-10);
}

TEST(Properties, ScalingInvariance) {
  Gen g(31);
  const ThermalConfig c1 = steel();
  const ThermalConfig c2 = flux_steel();
  const auto f1 = reduce_problem(Problem::ibvp1, c1).fitted;
  const auto f2 = reduce_problem(Problem::ibvp2, c2).fitted;
  for (double lam : {2.0, 1.0 / 3.0}) {
    for (int i = 0; i < 20; ++i) {
      const double t = g.real(10.0, 3600.0);
      // eta <= 1.5 keeps the flux solution away from its cancellation tail.
      const double x = g.real(0.0, 3.0) * std::sqrt(c1.alpha * t);
      const double a = f1(x, t), b = f1(lam * x, lam * lam * t);
      EXPECT_LE(std::abs(a - b), 1e-12 * std::abs(a));
      const double p = f2(x, t), q = f2(lam * x, lam * lam * t);
      EXPECT_LE(std::abs(lam * p - q), 1e-12 * std::abs(q));
    }
  }
}

TEST(Properties, FittedMatchesOracle) {
  Gen g(32);
  const ThermalConfig c1 = steel();
  const ThermalConfig c2 = flux_steel();
  const auto f1 = reduce_problem(Problem::ibvp1, c1).fitted;
  const auto f2 = reduce_problem(Problem::ibvp2, c2).fitted;
  for (int i = 0; i < 50; ++i) {
    const double t = g.real(1.0, 3600.0);
    const double x = g.real(0.0, 0.3);
    EXPECT_NEAR(f1(x, t), oracle_ibvp1(x, t, c1), 1e-9);
    EXPECT_NEAR(f2(x, t), oracle_ibvp2(x, t, c2), 1e-9);
  }
}
