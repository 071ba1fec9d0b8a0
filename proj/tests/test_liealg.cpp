#include "generators.hpp"
#include "lieheat/errors.hpp"
#include "lieheat/parse.hpp"
#include "lieheat/vector_field.hpp"

#include <gtest/gtest.h>

using namespace lieheat;
using lieheat::testing::Gen;

namespace {

Expr P(const char* s) { return parse_expr(s); }
VectorField VF(const char* xi, const char* tau, const char* phi) { return VectorField(P(xi), P(tau), P(phi)); }

const Expr kHeat = P("T_t - alpha*T_xx");

VectorField rebuild(const AlgebraExpansion& e) {
  VectorField z = linear_combination(e.coeffs);
  return z + inf_generator(e.remainder);
}

}  // namespace

TEST(Generators, NamedList) {
  EXPECT_EQ(named_generator(Generator::X1), VF("0", "1", "0"));
  EXPECT_EQ(named_generator(Generator::X2), VF("1", "0", "0"));
  EXPECT_EQ(named_generator(Generator::X3), VF("x", "2*t", "0"));
  EXPECT_EQ(named_generator(Generator::X4), VF("2*t", "0", "-alpha_inv*x*T"));
  EXPECT_EQ(named_generator(Generator::X5), VF("4*x*t", "4*t^2", "-alpha_inv*(x^2 + 2*alpha*t)*T"));
  EXPECT_EQ(named_generator(Generator::X6), VF("0", "0", "T"));
}

TEST(Generators, InfGenerator) {
  EXPECT_EQ(inf_generator(P("x^2 + 2*alpha*t")), VF("0", "0", "x^2 + 2*alpha*t"));
  EXPECT_EQ(inf_generator(P("1")), VF("0", "0", "1"));
  EXPECT_EQ(inf_generator(P("x")), VF("0", "0", "x"));
  EXPECT_THROW(inf_generator(P("x*T")), InvalidVectorField);
  EXPECT_THROW(inf_generator(P("T_x")), InvalidVectorField);
}

TEST(Generators, RejectsJetCoefficients) {
  EXPECT_THROW(VF("T_x", "0", "0"), InvalidVectorField);
  EXPECT_THROW(VF("0", "0", "T_xx"), InvalidVectorField);
}

TEST(Generators, LinearCombination) {
  const VectorField g = general_operator();
  EXPECT_EQ(g.xi(), P("k2 + k3*x + 2*k4*t + 4*k5*x*t"));
  EXPECT_EQ(g.tau(), P("k1 + 2*k3*t + 4*k5*t^2"));
  EXPECT_EQ(linear_combination({0, 0, 1, 0, 0, 0}), named_generator(3));
  EXPECT_EQ(linear_combination({1, 0, 0, 1, 0, 0}), VF("2*t", "1", "-alpha_inv*x*T"));
}

TEST(Prolong, Examples) {
  const auto p6 = prolong(named_generator(6), 2);
  EXPECT_EQ(p6.phi_x, P("T_x"));
  ASSERT_TRUE(p6.phi_xx.has_value());
  EXPECT_EQ(*p6.phi_xx, P("T_xx"));

  const auto p2 = prolong(named_generator(2), 2);
  EXPECT_TRUE(is_zero(p2.phi_x));
  EXPECT_TRUE(is_zero(*p2.phi_xx));

  const auto p3 = prolong(named_generator(3), 1);
  EXPECT_EQ(p3.phi_x, P("-T_x"));
  EXPECT_EQ(p3.phi_t, P("-2*T_t"));
  EXPECT_FALSE(p3.phi_xx.has_value());
}

TEST(ApplyTo, Examples) {
  EXPECT_EQ(apply_to(prolong(named_generator(6), 2), kHeat), kHeat);
  EXPECT_TRUE(is_zero(apply_to(prolong(named_generator(1), 2), kHeat)));
  EXPECT_TRUE(is_zero(apply_to(prolong(named_generator(2), 1), P("T - T_s"))));
}

TEST(ApplyTo, RejectsUncoveredCoordinates) {
  EXPECT_THROW(apply_to(prolong(named_generator(3), 1), P("T_xx")), Error);
  EXPECT_THROW(apply_to(prolong(named_generator(3), 2), P("T_xt")), Error);
  EXPECT_THROW(apply_to(prolong(named_generator(3), 2), P("T_xxx")), Error);
}

TEST(OnManifold, Examples) {
  EXPECT_TRUE(is_zero(on_manifold(kHeat)));
  EXPECT_TRUE(is_zero(on_manifold(P("T_xt - alpha*T_xxx"))));
  EXPECT_EQ(on_manifold(P("x*T_t")), P("alpha*x*T_xx"));
}

TEST(Symmetry, Examples) {
  EXPECT_TRUE(is_symmetry(named_generator(5)));
  EXPECT_TRUE(is_symmetry(inf_generator(P("x^2 + 2*alpha*t"))));
  const auto bad = check_symmetry(VF("0", "0", "x*t"));
  EXPECT_FALSE(bad.holds);
  EXPECT_EQ(bad.residual, P("x"));
}

TEST(Symmetry, AllNamedGenerators) {
  for (int i = 1; i <= 6; ++i) EXPECT_TRUE(is_symmetry(named_generator(i))) << "X" << i;
}

TEST(Symmetry, HeatPolynomialFamily) {
  // Heat polynomials: f_t = alpha f_xx, checked independently below.
  const char* family[] = {"1",
                          "x",
                          "x^2 + 2*alpha*t",
                          "x^3 + 6*alpha*x*t",
                          "x^4 + 12*alpha*x^2*t + 12*alpha^2*t^2",
                          "t + 1/2*alpha_inv*x^2",
                          "3*x^3 + 18*alpha*x*t - 5*x + 7"};
  for (const char* f : family) {
    const Expr e = P(f);
    const Expr heat = differentiate(e, Symbol::t) - sym(Symbol::alpha) * differentiate(differentiate(e, Symbol::x), Symbol::x);
    ASSERT_TRUE(is_zero(heat)) << f;
    EXPECT_TRUE(is_symmetry(inf_generator(e))) << f;
  }
  for (const char* f : {"x*t", "x^2", "t", "x^4 + 12*alpha*x^2*t"})
    EXPECT_FALSE(is_symmetry(inf_generator(P(f)))) << f;
}

TEST(Symmetry, NonSymmetryFields) {
  EXPECT_FALSE(is_symmetry(VF("x^2", "0", "0")));
  EXPECT_FALSE(is_symmetry(VF("0", "t", "0")));
  EXPECT_FALSE(is_symmetry(VF("0", "0", "T^2")));
}

TEST(Commutator, Examples) {
  EXPECT_EQ(commutator(named_generator(1), named_generator(3)), Expr(2) * named_generator(1));
  EXPECT_EQ(commutator(named_generator(2), named_generator(4)), -sym(Symbol::alpha_inv) * named_generator(6));
  EXPECT_TRUE(is_zero(commutator(named_generator(1), named_generator(2))));
}

TEST(Commutator, ClosureOfNamedGenerators) {
  for (int i = 1; i <= 6; ++i) {
    for (int j = 1; j <= 6; ++j) {
      const VectorField z = commutator(named_generator(i), named_generator(j));
      const auto e = expand_in_algebra(z);
      ASSERT_TRUE(e.in_span) << i << "," << j << ": " << e.diagnostic;
      EXPECT_EQ(rebuild(e), z) << i << "," << j;
      for (const auto& c : e.coeffs) {
        for (Symbol s : {Symbol::x, Symbol::t, Symbol::T}) EXPECT_FALSE(c.depends_on(s));
      }
    }
  }
}

TEST(Commutator, ClosureWithInfiniteFamily) {
  for (const char* f : {"1", "x", "x^2 + 2*alpha*t", "x^3 + 6*alpha*x*t"}) {
    for (int i = 1; i <= 6; ++i) {
      const VectorField z = commutator(named_generator(i), inf_generator(P(f)));
      const auto e = expand_in_algebra(z);
      ASSERT_TRUE(e.in_span) << f << " X" << i << ": " << e.diagnostic;
      EXPECT_EQ(rebuild(e), z);
      EXPECT_TRUE(is_symmetry(z));
    }
  }
}

TEST(Commutator, ExpansionRejectsOutsiders) {
  EXPECT_FALSE(expand_in_algebra(VF("x^2", "0", "0")).in_span);
  EXPECT_FALSE(expand_in_algebra(VF("0", "0", "x*t")).in_span);
  EXPECT_FALSE(expand_in_algebra(VF("0", "0", "x*T^2")).in_span);
}

TEST(Properties, AntisymmetryAndJacobi) {
  Gen g(21);
  for (int i = 0; i < 60; ++i) {
    const VectorField a = g.field(2), b = g.field(2), c = g.field(2);
    EXPECT_TRUE(is_zero(commutator(a, b) + commutator(b, a)));
    const VectorField jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                            commutator(c, commutator(a, b));
    EXPECT_TRUE(is_zero(jac)) << to_string(jac);
  }
}

TEST(Properties, ProlongationIdentities) {
  Gen g(22);
  using D = Direction;
  const Expr Tx = sym(Symbol::T_x), Tt = sym(Symbol::T_t), Txx = sym(Symbol::T_xx), Txt = sym(Symbol::T_xt);
  std::vector<VectorField> fields;
  for (int i = 1; i <= 6; ++i) fields.push_back(named_generator(i));
  for (int i = 0; i < 60; ++i) fields.push_back(g.field(2));
  for (const auto& f : fields) {
    const auto p = prolong(f, 2);
    EXPECT_EQ(p.phi_x, total_derivative(f.phi(), D::x) - Tx * total_derivative(f.xi(), D::x) -
                           Tt * total_derivative(f.tau(), D::x));
    EXPECT_EQ(p.phi_t, total_derivative(f.phi(), D::t) - Tx * total_derivative(f.xi(), D::t) -
                           Tt * total_derivative(f.tau(), D::t));
    EXPECT_EQ(*p.phi_xx, total_derivative(p.phi_x, D::x) - Txx * total_derivative(f.xi(), D::x) -
                             Txt * total_derivative(f.tau(), D::x));
  }
}

TEST(Properties, SymmetryIsLinear) {
  Gen g(23);
  for (int i = 0; i < 30; ++i) {
    std::array<Expr, 6> c;
    for (auto& e : c) e = g.rational();
    EXPECT_TRUE(is_symmetry(linear_combination(c)));
  }
  EXPECT_TRUE(is_symmetry(general_operator()));
}
